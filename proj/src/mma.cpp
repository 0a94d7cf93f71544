#include "windfarm/mma.hpp"

#include <cmath>
#include <stdexcept>

namespace wf {

namespace {

constexpr double kAsyInit = 0.5;
constexpr double kAsyIncr = 1.2;
constexpr double kAsyDecr = 0.7;
constexpr double kAlbefa = 0.1;
constexpr double kRaa0 = 1e-5;
constexpr double kEpsiMin = 1e-9;
constexpr double kA0 = 1.0;
constexpr double kC = 1000.0;
constexpr double kD = 1.0;

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Eigen::VectorXd;

/// Solves the MMA subproblem
///   min  sum_j [p0_j/(u_j-x_j) + q0_j/(x_j-l_j)] + a0 z + sum_i (c y_i + d/2 y_i^2)
///   s.t. sum_j [P_ij/(u_j-x_j) + Q_ij/(x_j-l_j)] - y_i <= b_i,
///        alfa <= x <= beta, y >= 0, z >= 0
/// with a primal-dual Newton interior-point method. The Newton system is
/// reduced to the x-block, which stays sparse except for a dense
/// contribution from any dense constraint rows; it is assembled densely and
/// factored with LLT.
VectorXd solve_subproblem(const VectorXd& low, const VectorXd& upp, const VectorXd& alfa,
                          const VectorXd& beta, const VectorXd& p0, const VectorXd& q0,
                          const SpMat& pmat, const SpMat& qmat, const VectorXd& b) {
  const Eigen::Index n = p0.size();
  const Eigen::Index m = b.size();

  VectorXd x = 0.5 * (alfa + beta);
  VectorXd y = VectorXd::Ones(m);
  double z = 1.0;
  VectorXd lam = VectorXd::Ones(m);
  VectorXd xsi = (1.0 / (x - alfa).array()).max(1.0).matrix();
  VectorXd eta = (1.0 / (beta - x).array()).max(1.0).matrix();
  VectorXd mu = VectorXd::Constant(m, std::max(1.0, 0.5 * kC));
  double zet = 1.0;
  VectorXd s = VectorXd::Ones(m);

  SpMat gg = pmat;  // same pattern as pmat/qmat; values refreshed per step

  auto residual_norms = [&](double epsi, double& rmax) {
    const VectorXd ux1 = upp - x;
    const VectorXd xl1 = x - low;
    const VectorXd plam = p0 + pmat.transpose() * lam;
    const VectorXd qlam = q0 + qmat.transpose() * lam;
    VectorXd gvec = pmat * ux1.cwiseInverse() + qmat * xl1.cwiseInverse();

    const VectorXd rex = plam.cwiseQuotient(ux1.cwiseAbs2()) -
                         qlam.cwiseQuotient(xl1.cwiseAbs2()) - xsi + eta;
    const VectorXd rey = VectorXd::Constant(m, kC) + kD * y - mu - lam;
    const double rez = kA0 - zet;
    const VectorXd relam = gvec - y + s - b;
    const VectorXd rexsi = xsi.cwiseProduct(x - alfa).array() - epsi;
    const VectorXd reeta = eta.cwiseProduct(beta - x).array() - epsi;
    const VectorXd remu = mu.cwiseProduct(y).array() - epsi;
    const double rezet = zet * z - epsi;
    const VectorXd res = lam.cwiseProduct(s).array() - epsi;

    double sq = rex.squaredNorm() + rey.squaredNorm() + rez * rez + relam.squaredNorm() +
                rexsi.squaredNorm() + reeta.squaredNorm() + remu.squaredNorm() + rezet * rezet +
                res.squaredNorm();
    rmax = std::max({rex.lpNorm<Eigen::Infinity>(), m ? rey.lpNorm<Eigen::Infinity>() : 0.0,
                     std::abs(rez), m ? relam.lpNorm<Eigen::Infinity>() : 0.0,
                     rexsi.lpNorm<Eigen::Infinity>(), reeta.lpNorm<Eigen::Infinity>(),
                     m ? remu.lpNorm<Eigen::Infinity>() : 0.0, std::abs(rezet),
                     m ? res.lpNorm<Eigen::Infinity>() : 0.0});
    return std::sqrt(sq);
  };

  double epsi = 1.0;
  while (epsi > kEpsiMin) {
    double rmax = 0.0;
    double rnorm = residual_norms(epsi, rmax);

    int newton = 0;
    while (rmax > 0.9 * epsi && newton < 200) {
      ++newton;
      const VectorXd ux1 = upp - x;
      const VectorXd xl1 = x - low;
      const VectorXd ux2 = ux1.cwiseAbs2();
      const VectorXd xl2 = xl1.cwiseAbs2();
      const VectorXd ux3 = ux1.cwiseProduct(ux2);
      const VectorXd xl3 = xl1.cwiseProduct(xl2);
      const VectorXd uxinv2 = ux2.cwiseInverse();
      const VectorXd xlinv2 = xl2.cwiseInverse();

      const VectorXd plam = p0 + pmat.transpose() * lam;
      const VectorXd qlam = q0 + qmat.transpose() * lam;
      const VectorXd gvec = pmat * ux1.cwiseInverse() + qmat * xl1.cwiseInverse();

      // GG = P .* uxinv2 - Q .* xlinv2 (columnwise scaling).
      for (Eigen::Index r = 0; r < m; ++r) {
        SpMat::InnerIterator pit(pmat, r), qit(qmat, r), git(gg, r);
        for (; git; ++git, ++pit, ++qit)
          git.valueRef() = pit.value() * uxinv2(git.col()) - qit.value() * xlinv2(git.col());
      }

      const VectorXd dpsidx = plam.cwiseQuotient(ux2) - qlam.cwiseQuotient(xl2);
      const VectorXd delx = dpsidx - epsi * (x - alfa).cwiseInverse() +
                            epsi * (beta - x).cwiseInverse();
      const VectorXd dely = VectorXd::Constant(m, kC) + kD * y - lam -
                            epsi * y.cwiseInverse();
      const double delz = kA0 - epsi / z;
      const VectorXd dellam = gvec - y - b + epsi * lam.cwiseInverse();

      const VectorXd diagx = 2.0 * (plam.cwiseQuotient(ux3) + qlam.cwiseQuotient(xl3)) +
                             xsi.cwiseQuotient(x - alfa) + eta.cwiseQuotient(beta - x);
      const VectorXd diagy = VectorXd::Constant(m, kD) + mu.cwiseQuotient(y);
      const VectorXd diaglamyi = s.cwiseQuotient(lam) + diagy.cwiseInverse();
      const VectorXd dellamyi = dellam + dely.cwiseQuotient(diagy);

      // Reduced system in x (a = 0, so z decouples).
      Eigen::MatrixXd axx = diagx.asDiagonal();
      for (Eigen::Index r = 0; r < m; ++r) {
        const double w = 1.0 / diaglamyi(r);
        for (SpMat::InnerIterator it1(gg, r); it1; ++it1)
          for (SpMat::InnerIterator it2(gg, r); it2; ++it2)
            axx(it1.col(), it2.col()) += w * it1.value() * it2.value();
      }
      VectorXd bx = delx + gg.transpose() * dellamyi.cwiseQuotient(diaglamyi);

      Eigen::LLT<Eigen::MatrixXd> llt(axx);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("mma: subproblem Newton system not positive definite");
      const VectorXd dx = llt.solve(-bx);
      // z decouples because no constraint involves z (a = 0).
      const double dz = -delz * z / zet;

      const VectorXd dlam = (gg * dx + dellamyi).cwiseQuotient(diaglamyi);
      const VectorXd dy = (dlam - dely).cwiseQuotient(diagy);
      const VectorXd dxsi = -xsi + (epsi - xsi.cwiseProduct(dx).array()).matrix().cwiseQuotient(
                                       x - alfa);
      const VectorXd deta = -eta + (epsi + eta.cwiseProduct(dx).array()).matrix().cwiseQuotient(
                                       beta - x);
      const VectorXd dmu =
          -mu + (epsi - mu.cwiseProduct(dy).array()).matrix().cwiseQuotient(y);
      const double dzet = -zet + (epsi - zet * dz) / z;
      const VectorXd ds = -s + (epsi - s.cwiseProduct(dlam).array()).matrix().cwiseQuotient(lam);

      // Largest step keeping all positivity/box slacks at >= ~1% margin.
      double stm = 1.0;
      auto limit_pos = [&stm](const VectorXd& v, const VectorXd& dv) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
          stm = std::max(stm, -1.01 * dv(i) / v(i));
      };
      limit_pos(y, dy);
      limit_pos(lam, dlam);
      limit_pos(xsi, dxsi);
      limit_pos(eta, deta);
      limit_pos(mu, dmu);
      limit_pos(s, ds);
      stm = std::max(stm, -1.01 * dz / z);
      stm = std::max(stm, -1.01 * dzet / zet);
      for (Eigen::Index i = 0; i < n; ++i) {
        stm = std::max(stm, -1.01 * dx(i) / (x(i) - alfa(i)));
        stm = std::max(stm, 1.01 * dx(i) / (beta(i) - x(i)));
      }
      double steg = 1.0 / stm;

      const VectorXd x0 = x, y0 = y, lam0 = lam, xsi0 = xsi, eta0 = eta, mu0 = mu, s0 = s;
      const double z0 = z, zet0 = zet;
      double rnew = 2.0 * rnorm;
      for (int half = 0; half < 50 && rnew > rnorm; ++half) {
        x = x0 + steg * dx;
        y = y0 + steg * dy;
        z = z0 + steg * dz;
        lam = lam0 + steg * dlam;
        xsi = xsi0 + steg * dxsi;
        eta = eta0 + steg * deta;
        mu = mu0 + steg * dmu;
        zet = zet0 + steg * dzet;
        s = s0 + steg * ds;
        rnew = residual_norms(epsi, rmax);
        steg *= 0.5;
      }
      rnorm = rnew;
    }
    epsi *= 0.1;
  }
  return x;
}

}  // namespace

MmaOptimizer::MmaOptimizer(Eigen::Index num_vars, double lower, double upper)
    : n_(num_vars), lower_(lower), upper_(upper) {
  reset();
}

void MmaOptimizer::reset() {
  iter_ = 0;
  xold1_.setZero(n_);
  xold2_.setZero(n_);
  low_ = VectorXd::Constant(n_, lower_);
  upp_ = VectorXd::Constant(n_, upper_);
}

Eigen::VectorXd MmaOptimizer::update(const Eigen::VectorXd& x, const Eigen::VectorXd& df0,
                                     const Eigen::VectorXd& g, const SpMat& dg,
                                     double move_limit) {
  if (x.size() != n_ || df0.size() != n_ || dg.cols() != n_ || dg.rows() != g.size())
    throw std::invalid_argument("mma: dimension mismatch");
  if (!df0.allFinite() || !g.allFinite())
    throw std::runtime_error("mma: non-finite objective gradient or constraint value");

  ++iter_;
  const Eigen::Index m = g.size();
  const double range = upper_ - lower_;

  // Asymptote update: spread on early iterations, then expand/shrink based
  // on oscillation of the last two steps.
  if (iter_ <= 2) {
    low_ = x.array() - kAsyInit * range;
    upp_ = x.array() + kAsyInit * range;
  } else {
    for (Eigen::Index j = 0; j < n_; ++j) {
      const double osc = (x(j) - xold1_(j)) * (xold1_(j) - xold2_(j));
      const double factor = osc > 0.0 ? kAsyIncr : (osc < 0.0 ? kAsyDecr : 1.0);
      low_(j) = x(j) - factor * (xold1_(j) - low_(j));
      upp_(j) = x(j) + factor * (upp_(j) - xold1_(j));
      low_(j) = std::min(low_(j), x(j) - 0.01 * range);
      low_(j) = std::max(low_(j), x(j) - 10.0 * range);
      upp_(j) = std::max(upp_(j), x(j) + 0.01 * range);
      upp_(j) = std::min(upp_(j), x(j) + 10.0 * range);
    }
  }
  xold2_ = xold1_;
  xold1_ = x;

  VectorXd alfa(n_), beta(n_);
  for (Eigen::Index j = 0; j < n_; ++j) {
    alfa(j) = std::max({lower_, low_(j) + kAlbefa * (x(j) - low_(j)), x(j) - move_limit});
    beta(j) = std::min({upper_, upp_(j) - kAlbefa * (upp_(j) - x(j)), x(j) + move_limit});
  }

  const VectorXd ux2 = (upp_ - x).cwiseAbs2();
  const VectorXd xl2 = (x - low_).cwiseAbs2();

  VectorXd p0(n_), q0(n_);
  for (Eigen::Index j = 0; j < n_; ++j) {
    const double dp = std::max(df0(j), 0.0);
    const double dm = std::max(-df0(j), 0.0);
    const double pq = 0.001 * (dp + dm) + kRaa0 / range;
    p0(j) = (dp + pq) * ux2(j);
    q0(j) = (dm + pq) * xl2(j);
  }

  // Constraint approximations keep the Jacobian sparsity; the symmetrizing
  // epsilon is applied on structural nonzeros only.
  SpMat pmat = dg, qmat = dg;
  for (Eigen::Index r = 0; r < m; ++r) {
    SpMat::InnerIterator pit(pmat, r), qit(qmat, r);
    for (; pit; ++pit, ++qit) {
      const double v = pit.value();
      const double dp = std::max(v, 0.0);
      const double dm = std::max(-v, 0.0);
      const double pq = 0.001 * (dp + dm) + kRaa0 / range;
      pit.valueRef() = (dp + pq) * ux2(pit.col());
      qit.valueRef() = (dm + pq) * xl2(qit.col());
    }
  }

  const VectorXd b = pmat * (upp_ - x).cwiseInverse() + qmat * (x - low_).cwiseInverse() - g;

  return solve_subproblem(low_, upp_, alfa, beta, p0, q0, pmat, qmat, b);
}

}  // namespace wf
