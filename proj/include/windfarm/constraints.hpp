#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <utility>
#include <vector>

#include "windfarm/grid.hpp"
#include "windfarm/turbine.hpp"

namespace wf {

/// Volume bounds plus pairwise spacing constraints g = rho_i + rho_j - 1 <= 0
/// for every ordered neighbor pair. H has one row per ordered pair with two
/// unit entries; its Jacobian is H itself.
struct ConstraintSystem {
  double v_min = 0.0;  // N_min / N
  double v_max = 1.0;  // N_max / N
  Eigen::Index n_min = 0;
  Eigen::Index n_max = 0;
  std::vector<std::vector<Eigen::Index>> neighbors;
  Eigen::SparseMatrix<double, Eigen::RowMajor> spacing_matrix;  // H, M x N

  Eigen::Index sites() const { return static_cast<Eigen::Index>(neighbors.size()); }
  Eigen::Index spacing_rows() const { return spacing_matrix.rows(); }
};

/// Neighbor sets N_i = { j != i : dist(i,j) <= factor * D } and the spacing
/// matrix H with both (i,j) and (j,i) rows per unordered pair. Exact ties at
/// factor * D count as neighbors.
ConstraintSystem build_spacing(const CandidateGrid& grid, const TurbineSpec& turbine,
                               double factor = 2.0);

struct VolumeConstraints {
  double g_min;  // -(sum rho)/N + N_min/N
  double g_max;  // (sum rho)/N - N_max/N
  Eigen::VectorXd grad_min;  // constant -1/N
  Eigen::VectorXd grad_max;  // constant +1/N
};

VolumeConstraints volume_constraints(const Eigen::VectorXd& rho, Eigen::Index n_min,
                                     Eigen::Index n_max);

/// Spacing constraint values H rho - 1.
Eigen::VectorXd spacing_values(const Eigen::VectorXd& rho, const ConstraintSystem& system);

}  // namespace wf
