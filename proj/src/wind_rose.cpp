#include "windfarm/wind_rose.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wf {

void WindRose::validate() const {
  if (bins.empty()) throw std::runtime_error("wind rose: no bins");
  double sum = 0.0;
  double prev = -1.0;
  for (const auto& b : bins) {
    if (b.frequency < 0.0) throw std::runtime_error("wind rose: negative frequency");
    if (b.direction_deg < 0.0 || b.direction_deg >= 360.0)
      throw std::runtime_error("wind rose: direction out of [0, 360)");
    if (b.direction_deg <= prev)
      throw std::runtime_error("wind rose: directions must be strictly increasing");
    if (b.speed <= 0.0) throw std::runtime_error("wind rose: speed must be > 0");
    prev = b.direction_deg;
    sum += b.frequency;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::runtime_error("wind rose: frequencies sum to " + std::to_string(sum));
}

WindRose load_wind_rose(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("wind rose: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("wind rose: empty file " + path);

  WindRose rose;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    WindRoseBin b;
    char c1, c2;
    if (!(ss >> b.direction_deg >> c1 >> b.frequency >> c2 >> b.speed) || c1 != ',' || c2 != ',')
      throw std::runtime_error("wind rose: parse error at " + path + ":" + std::to_string(lineno));
    rose.bins.push_back(b);
  }
  if (rose.bins.empty()) throw std::runtime_error("wind rose: no bins in " + path);

  double sum = 0.0;
  for (const auto& b : rose.bins) sum += b.frequency;
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::runtime_error("wind rose: frequencies sum to " + std::to_string(sum) +
                             ", expected 1 within 1e-6");
  for (auto& b : rose.bins) b.frequency /= sum;

  rose.validate();
  return rose;
}

}  // namespace wf
