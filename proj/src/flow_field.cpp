#include "windfarm/flow_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wf {

FlowField evaluate_flow_field(const CandidateGrid& grid, const std::vector<int>& selected,
                              const TurbineSpec& turbine, const WakeParams& params,
                              double v_inf, double direction_deg, double resolution) {
  if (resolution <= 0.0) throw std::invalid_argument("flow field: resolution must be > 0");
  if (static_cast<Eigen::Index>(selected.size()) != grid.size())
    throw std::invalid_argument("flow field: layout/grid size mismatch");

  const double margin = turbine.rotor_diameter;
  const double extent = grid.boundary_radius + margin;
  if (resolution > 2.0 * extent)
    throw std::invalid_argument("flow field: resolution larger than farm extent");

  FlowField field;
  field.x0 = -extent;
  field.y0 = -extent;
  field.resolution = resolution;
  field.nx = static_cast<Eigen::Index>(std::floor(2.0 * extent / resolution)) + 1;
  field.ny = field.nx;
  field.speed.resize(field.ny, field.nx);

  const double theta = direction_deg * std::numbers::pi / 180.0;
  const double ux = -std::sin(theta), uy = -std::cos(theta);
  const double vx = std::cos(theta), vy = -std::sin(theta);

  std::vector<std::pair<double, double>> sources;  // (downwind, crosswind) per turbine
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    if (selected[static_cast<std::size_t>(i)])
      sources.emplace_back(ux * grid.x(i) + uy * grid.y(i), vx * grid.x(i) + vy * grid.y(i));

  for (Eigen::Index row = 0; row < field.ny; ++row) {
    const double py = field.y0 + row * resolution;
    for (Eigen::Index col = 0; col < field.nx; ++col) {
      const double px = field.x0 + col * resolution;
      const double pd = ux * px + uy * py;
      const double pc = vx * px + vy * py;
      double sum_sq = 0.0;
      for (const auto& [sd, sc] : sources) {
        const double dx = pd - sd;
        if (dx <= 1e-6) continue;  // same slack as the deficit precomputation
        const double deficit = gaussian_deficit(dx, pc - sc, 0.0, turbine, params);
        sum_sq += deficit * deficit;
      }
      const double loss = std::min(std::sqrt(sum_sq), 1.0);
      field.speed(row, col) = v_inf * (1.0 - loss);
    }
  }
  return field;
}

}  // namespace wf
