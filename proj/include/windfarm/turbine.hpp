#pragma once

#include <stdexcept>

namespace wf {

/// Physical data of a single turbine model. All turbines in a farm are
/// identical; hub height only matters relative to other hub heights and
/// cancels out when they are all equal.
struct TurbineSpec {
  double rotor_diameter = 130.0;    // D [m]
  double hub_height = 110.0;        // z_h [m]
  double rated_power = 3.37;        // P_r [MW]
  double cut_in = 4.0;              // V_ci [m/s]
  double rated_speed = 9.8;         // V_r [m/s]
  double cut_out = 25.0;            // V_co [m/s]
  double thrust_coefficient = 8.0 / 9.0;  // C_T [-]

  void validate() const {
    if (rotor_diameter <= 0.0) throw std::invalid_argument("turbine: rotor diameter must be > 0");
    if (rated_power <= 0.0) throw std::invalid_argument("turbine: rated power must be > 0");
    if (!(0.0 < cut_in && cut_in < rated_speed && rated_speed < cut_out))
      throw std::invalid_argument("turbine: need 0 < cut-in < rated < cut-out");
    if (!(thrust_coefficient > 0.0 && thrust_coefficient < 1.0))
      throw std::invalid_argument("turbine: thrust coefficient must be in (0,1)");
  }
};

struct PowerEval {
  double power;      // [MW]
  double dpower_dv;  // [MW per m/s]
};

/// Piecewise power curve: zero below cut-in, cubic ramp up to rated, flat
/// at rated power, zero at and above cut-out. The derivative takes the
/// cubic-side value at the cut-in and rated breakpoints and zero at cut-out,
/// so it is a fixed consistent subgradient at the kinks.
inline PowerEval turbine_power(double v_eff, const TurbineSpec& t) {
  if (v_eff < t.cut_in || v_eff >= t.cut_out) return {0.0, 0.0};
  const double span = t.rated_speed - t.cut_in;
  if (v_eff <= t.rated_speed) {
    const double u = (v_eff - t.cut_in) / span;
    return {t.rated_power * u * u * u,
            3.0 * t.rated_power * (v_eff - t.cut_in) * (v_eff - t.cut_in) / (span * span * span)};
  }
  return {t.rated_power, 0.0};
}

}  // namespace wf
