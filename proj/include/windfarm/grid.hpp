#pragma once

#include <Eigen/Dense>
#include <string>

namespace wf {

enum class GridMode { centered, offset, external };

/// Fixed set of candidate turbine locations inside a circular boundary.
struct CandidateGrid {
  Eigen::VectorXd x;  // [m]
  Eigen::VectorXd y;  // [m]
  double boundary_radius = 0.0;  // [m]
  double grid_spacing = 0.0;     // [m], 0 for external grids
  GridMode mode = GridMode::external;

  Eigen::Index size() const { return x.size(); }
};

/// Downwind/crosswind coordinates of every site for one wind direction.
/// +x points in the direction of wind propagation.
struct WindFrame {
  Eigen::VectorXd downwind;   // d_x [m]
  Eigen::VectorXd crosswind;  // d_y [m]
};

/// Square-lattice points inside a circle of the given radius. Centered mode
/// places a lattice point at the origin, offset mode shifts by half a
/// spacing in both axes. Points exactly on the boundary circle are kept.
/// Ordering is row-major: by y, then by x.
CandidateGrid generate_circular_grid(double radius, double spacing, GridMode mode);

/// Reads a grid from CSV with header `x,y` (meters). The boundary radius is
/// the largest point norm. Duplicate points and empty files are rejected.
CandidateGrid load_grid(const std::string& path);

/// Rotates site coordinates into the frame of a wind direction given in
/// meteorological convention: degrees the wind comes FROM, clockwise from
/// north. A 270 deg (westerly) wind propagates toward geographic east.
WindFrame rotate_to_wind_frame(const CandidateGrid& grid, double direction_deg);

}  // namespace wf
