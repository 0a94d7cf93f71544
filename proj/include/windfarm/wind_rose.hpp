#pragma once

#include <string>
#include <vector>

namespace wf {

struct WindRoseBin {
  double direction_deg;  // meteorological FROM direction, [0, 360)
  double frequency;      // [-], bins sum to 1
  double speed;          // free-stream speed V_inf [m/s]
};

/// Discrete wind climate: direction bins with occurrence frequency and
/// free-stream speed. Directions are strictly increasing in [0, 360).
struct WindRose {
  std::vector<WindRoseBin> bins;

  std::size_t size() const { return bins.size(); }
  void validate() const;
};

/// Reads a rose from CSV with header `direction_deg,frequency,speed_ms`.
/// Frequencies within 1e-6 of unit sum are renormalized to sum exactly 1;
/// larger deviations are an error.
WindRose load_wind_rose(const std::string& path);

}  // namespace wf
