#pragma once

#include <Eigen/Dense>
#include <utility>

#include "windfarm/turbine.hpp"
#include "windfarm/wake.hpp"
#include "windfarm/wind_rose.hpp"

namespace wf {

inline constexpr double kHoursPerYear = 8760.0;

enum class InterpolationKind { ramp, simp, linear };

/// Density interpolation used to penalize intermediate densities. RAMP maps
/// rho -> rho / (1 + q (1 - rho)); SIMP maps rho -> rho^p; linear is RAMP
/// with q = 0.
struct InterpolationScheme {
  InterpolationKind kind = InterpolationKind::ramp;
  double penalty = 0.0;  // q for RAMP, p for SIMP (p >= 1)

  void validate() const;
};

struct InterpEval {
  double value;       // rho_tilde
  double derivative;  // d rho_tilde / d rho
};

InterpEval interpolate(double rho, const InterpolationScheme& scheme);

/// Applies interpolate() elementwise; second return holds the derivatives.
std::pair<Eigen::VectorXd, Eigen::VectorXd> interpolate_vector(const Eigen::VectorXd& rho,
                                                               const InterpolationScheme& scheme);

/// Effective speed at every site for one direction bin: the root-sum-square
/// of density-weighted squared single-wake deficits, clamped at total loss 1.
Eigen::VectorXd effective_speeds(const Eigen::VectorXd& rho_tilde, const DeficitTensor& tensor,
                                 std::size_t direction, double v_inf);

/// Farm power for one direction bin [MW]: density-weighted sum of the
/// per-site power-curve evaluations at the effective speeds.
double farm_power(const Eigen::VectorXd& rho_tilde, const DeficitTensor& tensor,
                  const WindRose& rose, const TurbineSpec& turbine, std::size_t direction);

struct ObjectiveReport {
  double aep_gwh = 0.0;
  Eigen::VectorXd farm_power_mw;  // per direction bin
  Eigen::VectorXd gradient;       // d(-AEP)/d(rho), [GWh per unit density]
};

/// AEP and the analytic gradient of f = -AEP with respect to the raw
/// densities (chain rule through the interpolation and the wake loss).
ObjectiveReport aep(const Eigen::VectorXd& rho, const InterpolationScheme& scheme,
                    const DeficitTensor& tensor, const WindRose& rose,
                    const TurbineSpec& turbine);

}  // namespace wf
