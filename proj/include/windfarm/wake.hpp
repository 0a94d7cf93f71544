#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "windfarm/grid.hpp"
#include "windfarm/turbine.hpp"
#include "windfarm/wind_rose.hpp"

namespace wf {

/// Gaussian wake parameters. Yaw and deflection are fixed at zero in this
/// model, so the lateral and vertical expansion rates coincide.
struct WakeParams {
  double turbulence_intensity = 0.075;
  double yaw = 0.0;         // [rad], fixed 0
  double deflection = 0.0;  // [m], fixed 0

  void validate() const;
};

/// k_y = k_z = 0.3837 * TI + 0.003678.
std::pair<double, double> expansion_rates(double turbulence_intensity);

/// Wake standard deviations at downstream distance dx >= 0:
/// sigma_y = k_y * dx + D cos(yaw) / sqrt(8), sigma_z = k_z * dx + D / sqrt(8).
std::pair<double, double> wake_stddevs(double dx, const TurbineSpec& turbine,
                                       const WakeParams& params);

/// Single-wake fractional speed deficit at a point strictly downstream
/// (dx > 0) with crosswind offset dy and vertical offset dz. The square-root
/// argument is floored at zero so the deficit saturates below 1 in the near
/// wake.
double gaussian_deficit(double dx, double dy, double dz, const TurbineSpec& turbine,
                        const WakeParams& params);

/// Per-direction single-wake deficits for a fixed grid. deficit[i](j,k) is
/// the fractional loss at site j caused by a turbine at site k for direction
/// bin i; zero unless k is strictly upstream of j. squared[i] caches the
/// elementwise squares used by the root-sum-square superposition.
struct DeficitTensor {
  std::vector<Eigen::MatrixXd> deficit;
  std::vector<Eigen::MatrixXd> squared;
  std::vector<std::vector<std::vector<Eigen::Index>>> upstream;  // S_j per bin

  std::size_t directions() const { return deficit.size(); }
  Eigen::Index sites() const { return deficit.empty() ? 0 : deficit.front().rows(); }
};

/// Evaluates gaussian_deficit for every strictly downstream ordered pair in
/// every direction bin. Hub heights are equal, so dz = 0 throughout. Bins
/// are independent and evaluated in parallel.
DeficitTensor precompute_deficit_tensor(const CandidateGrid& grid, const WindRose& rose,
                                        const TurbineSpec& turbine, const WakeParams& params);

}  // namespace wf
