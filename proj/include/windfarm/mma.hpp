#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace wf {

/// Method of Moving Asymptotes outer update for
///   min f0(x)  s.t.  g_i(x) <= 0,  lower <= x <= upper.
/// Keeps the asymptote state between calls. The convex separable subproblem
/// is solved with a primal-dual interior-point method to 1e-9 dual
/// feasibility. Asymptote constants are the standard published defaults
/// (init 0.5, expand 1.2, shrink 0.7).
class MmaOptimizer {
 public:
  MmaOptimizer(Eigen::Index num_vars, double lower = 0.0, double upper = 1.0);

  /// One outer iteration. dg is the m x n constraint Jacobian. The step is
  /// additionally confined to [x - move_limit, x + move_limit].
  Eigen::VectorXd update(const Eigen::VectorXd& x, const Eigen::VectorXd& df0,
                         const Eigen::VectorXd& g,
                         const Eigen::SparseMatrix<double, Eigen::RowMajor>& dg,
                         double move_limit);

  void reset();

 private:
  Eigen::Index n_;
  double lower_, upper_;
  int iter_ = 0;
  Eigen::VectorXd xold1_, xold2_, low_, upp_;
};

}  // namespace wf
