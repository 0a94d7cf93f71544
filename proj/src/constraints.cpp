#include "windfarm/constraints.hpp"

#include <cmath>
#include <stdexcept>

namespace wf {

ConstraintSystem build_spacing(const CandidateGrid& grid, const TurbineSpec& turbine,
                               double factor) {
  if (factor <= 0.0) throw std::invalid_argument("constraints: spacing factor must be > 0");
  const Eigen::Index n = grid.size();
  const double limit = factor * turbine.rotor_diameter;
  const double limit2 = limit * limit;

  ConstraintSystem system;
  system.neighbors.assign(static_cast<std::size_t>(n), {});
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dx = grid.x(i) - grid.x(j);
      const double dy = grid.y(i) - grid.y(j);
      if (dx * dx + dy * dy > limit2) continue;
      system.neighbors[static_cast<std::size_t>(i)].push_back(j);
      triplets.emplace_back(row, i, 1.0);
      triplets.emplace_back(row, j, 1.0);
      ++row;
    }
  }
  system.spacing_matrix.resize(row, n);
  system.spacing_matrix.setFromTriplets(triplets.begin(), triplets.end());
  return system;
}

VolumeConstraints volume_constraints(const Eigen::VectorXd& rho, Eigen::Index n_min,
                                     Eigen::Index n_max) {
  if (n_min < 0 || n_min > n_max || n_max > rho.size())
    throw std::invalid_argument("constraints: need 0 <= N_min <= N_max <= N");
  const double n = static_cast<double>(rho.size());
  const double fill = rho.sum() / n;
  VolumeConstraints vc;
  vc.g_min = -fill + static_cast<double>(n_min) / n;
  vc.g_max = fill - static_cast<double>(n_max) / n;
  vc.grad_min = Eigen::VectorXd::Constant(rho.size(), -1.0 / n);
  vc.grad_max = Eigen::VectorXd::Constant(rho.size(), 1.0 / n);
  return vc;
}

Eigen::VectorXd spacing_values(const Eigen::VectorXd& rho, const ConstraintSystem& system) {
  if (rho.size() != system.spacing_matrix.cols())
    throw std::invalid_argument("constraints: density/system size mismatch");
  return system.spacing_matrix * rho - Eigen::VectorXd::Ones(system.spacing_rows());
}

}  // namespace wf
