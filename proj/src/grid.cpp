#include "windfarm/grid.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wf {

CandidateGrid generate_circular_grid(double radius, double spacing, GridMode mode) {
  if (radius <= 0.0) throw std::invalid_argument("grid: radius must be > 0");
  if (spacing <= 0.0) throw std::invalid_argument("grid: spacing must be > 0");
  if (mode == GridMode::external)
    throw std::invalid_argument("grid: external mode cannot be generated");

  const double shift = (mode == GridMode::offset) ? 0.5 : 0.0;
  const int k = static_cast<int>(std::ceil(radius / spacing)) + 1;

  std::vector<double> xs, ys;
  for (int j = -k; j <= k; ++j) {
    for (int i = -k; i <= k; ++i) {
      const double px = (i + shift) * spacing;
      const double py = (j + shift) * spacing;
      if (px * px + py * py <= radius * radius) {
        xs.push_back(px);
        ys.push_back(py);
      }
    }
  }

  CandidateGrid grid;
  grid.x = Eigen::Map<Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  grid.y = Eigen::Map<Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  grid.boundary_radius = radius;
  grid.grid_spacing = spacing;
  grid.mode = mode;
  return grid;
}

CandidateGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("grid: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("grid: empty file " + path);

  std::vector<double> xs, ys;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    double px, py;
    char comma;
    if (!(ss >> px >> comma >> py) || comma != ',')
      throw std::runtime_error("grid: parse error at " + path + ":" + std::to_string(lineno));
    xs.push_back(px);
    ys.push_back(py);
  }
  if (xs.empty()) throw std::runtime_error("grid: no points in " + path);

  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = a + 1; b < xs.size(); ++b)
      if (xs[a] == xs[b] && ys[a] == ys[b])
        throw std::runtime_error("grid: duplicate point in " + path + " at rows " +
                                 std::to_string(a + 2) + " and " + std::to_string(b + 2));

  CandidateGrid grid;
  grid.x = Eigen::Map<Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  grid.y = Eigen::Map<Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size()));
  grid.boundary_radius = std::sqrt((grid.x.array().square() + grid.y.array().square()).maxCoeff());
  grid.grid_spacing = 0.0;
  grid.mode = GridMode::external;
  return grid;
}

WindFrame rotate_to_wind_frame(const CandidateGrid& grid, double direction_deg) {
  // Unit vector of wind propagation for a FROM-direction theta (clockwise
  // from north): u = (-sin(theta), -cos(theta)) in (east, north) axes.
  const double theta = direction_deg * std::numbers::pi / 180.0;
  const double ux = -std::sin(theta), uy = -std::cos(theta);
  const double vx = std::cos(theta), vy = -std::sin(theta);  // u rotated +90 deg

  WindFrame frame;
  frame.downwind = ux * grid.x + uy * grid.y;
  frame.crosswind = vx * grid.x + vy * grid.y;
  return frame;
}

}  // namespace wf
