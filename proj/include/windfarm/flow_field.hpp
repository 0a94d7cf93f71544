#pragma once

#include <Eigen/Dense>
#include <vector>

#include "windfarm/grid.hpp"
#include "windfarm/turbine.hpp"
#include "windfarm/wake.hpp"

namespace wf {

/// Regular raster of effective wind speed over the farm bounding box.
struct FlowField {
  double x0 = 0.0, y0 = 0.0;  // lower-left sample position [m]
  double resolution = 0.0;    // sample spacing [m]
  Eigen::Index nx = 0, ny = 0;
  Eigen::MatrixXd speed;  // ny x nx, speed(row, col) at (x0 + col*res, y0 + row*res)
};

/// Samples the effective speed produced by the selected turbines for a
/// single incoming direction, combining single-wake deficits by
/// root-sum-square. The raster covers the boundary circle plus one rotor
/// diameter of margin.
FlowField evaluate_flow_field(const CandidateGrid& grid, const std::vector<int>& selected,
                              const TurbineSpec& turbine, const WakeParams& params,
                              double v_inf, double direction_deg, double resolution);

}  // namespace wf
