#include "windfarm/wake.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace wf {

void WakeParams::validate() const {
  if (turbulence_intensity <= 0.0)
    throw std::invalid_argument("wake: turbulence intensity must be > 0");
}

std::pair<double, double> expansion_rates(double turbulence_intensity) {
  if (turbulence_intensity <= 0.0)
    throw std::invalid_argument("wake: turbulence intensity must be > 0");
  const double k = 0.3837 * turbulence_intensity + 0.003678;
  return {k, k};
}

std::pair<double, double> wake_stddevs(double dx, const TurbineSpec& turbine,
                                       const WakeParams& params) {
  if (dx < 0.0) throw std::invalid_argument("wake: downstream distance must be >= 0");
  const auto [ky, kz] = expansion_rates(params.turbulence_intensity);
  const double d = turbine.rotor_diameter;
  const double sigma_y = ky * dx + d * std::cos(params.yaw) / std::sqrt(8.0);
  const double sigma_z = kz * dx + d / std::sqrt(8.0);
  return {sigma_y, sigma_z};
}

double gaussian_deficit(double dx, double dy, double dz, const TurbineSpec& turbine,
                        const WakeParams& params) {
  if (dx <= 0.0) throw std::invalid_argument("wake: deficit requires dx > 0");
  const auto [sigma_y, sigma_z] = wake_stddevs(dx, turbine, params);
  const double d2 = turbine.rotor_diameter * turbine.rotor_diameter;
  const double radicand =
      1.0 - turbine.thrust_coefficient * std::cos(params.yaw) / (8.0 * sigma_y * sigma_z / d2);
  const double amplitude = 1.0 - std::sqrt(std::max(radicand, 0.0));
  const double ey = (dy - params.deflection) / sigma_y;
  const double ez = dz / sigma_z;
  return amplitude * std::exp(-0.5 * ey * ey) * std::exp(-0.5 * ez * ez);
}

DeficitTensor precompute_deficit_tensor(const CandidateGrid& grid, const WindRose& rose,
                                        const TurbineSpec& turbine, const WakeParams& params) {
  turbine.validate();
  params.validate();
  rose.validate();

  const Eigen::Index n = grid.size();
  const std::size_t nbins = rose.size();

  DeficitTensor tensor;
  tensor.deficit.assign(nbins, Eigen::MatrixXd::Zero(n, n));
  tensor.squared.assign(nbins, Eigen::MatrixXd::Zero(n, n));
  tensor.upstream.assign(nbins, std::vector<std::vector<Eigen::Index>>(n));

  auto fill_bin = [&](std::size_t i) {
    const WindFrame frame = rotate_to_wind_frame(grid, rose.bins[i].direction_deg);
    Eigen::MatrixXd& w = tensor.deficit[i];
    Eigen::MatrixXd& w2 = tensor.squared[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        if (j == k) continue;
        const double dx = frame.downwind(j) - frame.downwind(k);
        // Only strictly upstream turbines wake site j. The micrometer slack
        // keeps rotation round-off from promoting crosswind-aligned pairs
        // (exact downwind ties) into spurious near-rotor wakes.
        if (dx <= 1e-6) continue;
        const double dy = frame.crosswind(j) - frame.crosswind(k);
        const double value = gaussian_deficit(dx, dy, 0.0, turbine, params);
        w(j, k) = value;
        w2(j, k) = value * value;
        if (value > 0.0) tensor.upstream[i][j].push_back(k);
      }
    }
  };

  const std::size_t nthreads =
      std::min<std::size_t>(nbins, std::max(1u, std::thread::hardware_concurrency()));
  if (nthreads <= 1 || nbins <= 1) {
    for (std::size_t i = 0; i < nbins; ++i) fill_bin(i);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < nbins; i += nthreads) fill_bin(i);
      });
    }
    for (auto& w : workers) w.join();
  }
  return tensor;
}

}  // namespace wf
