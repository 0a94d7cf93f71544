#include "windfarm/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace wf {

namespace {
constexpr double kLossRootGuard = 1e-12;
}

void InterpolationScheme::validate() const {
  switch (kind) {
    case InterpolationKind::ramp:
      if (penalty < 0.0) throw std::invalid_argument("interpolation: RAMP penalty must be >= 0");
      break;
    case InterpolationKind::simp:
      if (penalty < 1.0) throw std::invalid_argument("interpolation: SIMP exponent must be >= 1");
      break;
    case InterpolationKind::linear:
      break;
  }
}

InterpEval interpolate(double rho, const InterpolationScheme& scheme) {
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("interpolation: density must be in [0, 1]");
  scheme.validate();
  switch (scheme.kind) {
    case InterpolationKind::ramp: {
      const double q = scheme.penalty;
      const double denom = 1.0 + q * (1.0 - rho);
      return {rho / denom, (1.0 + q) / (denom * denom)};
    }
    case InterpolationKind::simp: {
      const double p = scheme.penalty;
      return {std::pow(rho, p), p * std::pow(rho, p - 1.0)};
    }
    case InterpolationKind::linear:
    default:
      return {rho, 1.0};
  }
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> interpolate_vector(const Eigen::VectorXd& rho,
                                                               const InterpolationScheme& scheme) {
  Eigen::VectorXd value(rho.size()), deriv(rho.size());
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    const InterpEval e = interpolate(rho(i), scheme);
    value(i) = e.value;
    deriv(i) = e.derivative;
  }
  return {std::move(value), std::move(deriv)};
}

Eigen::VectorXd effective_speeds(const Eigen::VectorXd& rho_tilde, const DeficitTensor& tensor,
                                 std::size_t direction, double v_inf) {
  if (direction >= tensor.directions())
    throw std::invalid_argument("objective: direction index out of range");
  if (rho_tilde.size() != tensor.sites())
    throw std::invalid_argument("objective: density/tensor size mismatch");
  const Eigen::VectorXd loss =
      (tensor.squared[direction] * rho_tilde).array().sqrt().min(1.0).matrix();
  return v_inf * (Eigen::VectorXd::Ones(rho_tilde.size()) - loss);
}

double farm_power(const Eigen::VectorXd& rho_tilde, const DeficitTensor& tensor,
                  const WindRose& rose, const TurbineSpec& turbine, std::size_t direction) {
  if (direction >= rose.size())
    throw std::invalid_argument("objective: direction index out of range");
  const Eigen::VectorXd v_eff =
      effective_speeds(rho_tilde, tensor, direction, rose.bins[direction].speed);
  double power = 0.0;
  for (Eigen::Index j = 0; j < v_eff.size(); ++j)
    power += rho_tilde(j) * turbine_power(v_eff(j), turbine).power;
  return power;
}

ObjectiveReport aep(const Eigen::VectorXd& rho, const InterpolationScheme& scheme,
                    const DeficitTensor& tensor, const WindRose& rose,
                    const TurbineSpec& turbine) {
  if (rose.size() != tensor.directions())
    throw std::invalid_argument("objective: rose/tensor bin count mismatch");
  if (rho.size() != tensor.sites())
    throw std::invalid_argument("objective: density/tensor size mismatch");

  const Eigen::Index n = rho.size();
  const auto [rho_tilde, drho_tilde] = interpolate_vector(rho, scheme);

  ObjectiveReport report;
  report.farm_power_mw.setZero(static_cast<Eigen::Index>(rose.size()));
  Eigen::VectorXd grad_tilde = Eigen::VectorXd::Zero(n);  // d(AEP)/d(rho_tilde), MW units

  for (std::size_t i = 0; i < rose.size(); ++i) {
    const double v_inf = rose.bins[i].speed;
    const double freq = rose.bins[i].frequency;
    const Eigen::MatrixXd& w2 = tensor.squared[i];

    const Eigen::VectorXd loss_raw = (w2 * rho_tilde).array().sqrt().matrix();
    Eigen::VectorXd power(n), dpower(n);
    double farm = 0.0;
    Eigen::VectorXd chain(n);  // rho_tilde_j * dP/dV_j * dV/dL_j contribution
    for (Eigen::Index j = 0; j < n; ++j) {
      const double loss = std::min(loss_raw(j), 1.0);
      const PowerEval pe = turbine_power(v_inf * (1.0 - loss), turbine);
      power(j) = pe.power;
      dpower(j) = pe.dpower_dv;
      farm += rho_tilde(j) * pe.power;
      // dV_e,j / d rho_tilde_m = -v_inf * W2(j,m) / (2 L_j); zero once the
      // total loss clamps at 1.
      const double guarded = std::max(loss_raw(j), kLossRootGuard);
      chain(j) = (loss_raw(j) < 1.0) ? rho_tilde(j) * pe.dpower_dv * (-v_inf / (2.0 * guarded))
                                     : 0.0;
    }
    report.farm_power_mw(static_cast<Eigen::Index>(i)) = farm;
    grad_tilde += freq * (power + w2.transpose() * chain);
  }

  double mean_power = 0.0;
  for (std::size_t i = 0; i < rose.size(); ++i)
    mean_power += rose.bins[i].frequency * report.farm_power_mw(static_cast<Eigen::Index>(i));

  const double mwh_to_gwh = kHoursPerYear / 1000.0;
  report.aep_gwh = mean_power * mwh_to_gwh;
  report.gradient = (-mwh_to_gwh) * grad_tilde.cwiseProduct(drho_tilde);
  return report;
}

}  // namespace wf
