// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. The long Example-2 reproduction only runs with --extended.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "support/reference_models.hpp"
#include "windfarm/grid.hpp"
#include "windfarm/objective.hpp"
#include "windfarm/solvers.hpp"
#include "windfarm/wind_rose.hpp"

using namespace wf;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int criterion, const char* title, bool pass, double seconds,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%.1f s) %s\n", pass ? "PASS" : "FAIL", criterion, title,
              seconds, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

WakeParams default_params() {
  WakeParams p;
  p.turbulence_intensity = 0.075;
  return p;
}

WindRose site_rose() { return load_wind_rose(std::string(WF_DATA_DIR) + "/iea37_windrose.csv"); }

MmaSettings paper_mma(double initial_density) {
  MmaSettings s;
  s.q_min = 0.0;
  s.q_step = 0.5;
  s.q_step_interval = 10;
  s.q_max = 10.0;
  s.q_bar = 3.0;
  s.move_limit = 0.1;
  s.max_iterations = 1000;
  s.step_tolerance = 1e-8;
  s.initial_density = initial_density;
  return s;
}

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion 1 -----------------------------------------------------------

void criterion_grid_counts() {
  const auto start = Clock::now();
  const auto small = generate_circular_grid(1300.0, 200.0, GridMode::offset);
  const auto large = generate_circular_grid(3000.0, 200.0, GridMode::centered);
  const bool counts = small.size() == 124 && large.size() == 709;
  const bool oracle = small.size() == wf::testing::count_lattice_points(1300.0, 200.0, true) &&
                      large.size() == wf::testing::count_lattice_points(3000.0, 200.0, false);
  const double secs = elapsed(start);
  char detail[128];
  std::snprintf(detail, sizeof(detail), "sites=%lld/%lld", static_cast<long long>(small.size()),
                static_cast<long long>(large.size()));
  report(1, "candidate grid counts match enumeration", counts && oracle && secs < 1.0, secs,
         detail);
}

// --- criterion 2 -----------------------------------------------------------

void criterion_gradient() {
  const auto start = Clock::now();
  const auto grid = generate_circular_grid(1300.0, 200.0, GridMode::offset);
  const auto rose = site_rose();
  const TurbineSpec turbine;
  const auto tensor = precompute_deficit_tensor(grid, rose, turbine, default_params());
  const Eigen::Index n = grid.size();

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> interior(0.1, 0.9);
  const double h = 1e-6;

  double worst = 0.0;
  long long checked = 0, skipped = 0;
  bool pass = true;

  for (int design = 0; design < 20 && pass; ++design) {
    Eigen::VectorXd rho(n);
    for (Eigen::Index i = 0; i < n; ++i) rho(i) = interior(rng);

    for (double q : {0.0, 1.0, 5.0}) {
      const InterpolationScheme scheme{InterpolationKind::ramp, q};
      const auto base = aep(rho, scheme, tensor, rose, turbine);

      // Exclude components that influence a site whose effective speed sits
      // within 1e-3 m/s of a power-curve breakpoint.
      const Eigen::VectorXd rho_tilde = interpolate_vector(rho, scheme).first;
      std::vector<bool> near_kink(static_cast<std::size_t>(n), false);
      for (std::size_t bin = 0; bin < tensor.directions(); ++bin) {
        const Eigen::VectorXd ve = effective_speeds(rho_tilde, tensor, bin, rose.bins[bin].speed);
        for (Eigen::Index j = 0; j < n; ++j) {
          const bool close = std::abs(ve(j) - turbine.cut_in) < 1e-3 ||
                             std::abs(ve(j) - turbine.rated_speed) < 1e-3 ||
                             std::abs(ve(j) - turbine.cut_out) < 1e-3;
          if (!close) continue;
          for (Eigen::Index k = 0; k < n; ++k)
            if (tensor.squared[bin](j, k) > 0.0) near_kink[static_cast<std::size_t>(k)] = true;
        }
      }

      for (Eigen::Index m = 0; m < n; ++m) {
        if (near_kink[static_cast<std::size_t>(m)]) {
          ++skipped;
          continue;
        }
        Eigen::VectorXd rp = rho, rm = rho;
        rp(m) += h;
        rm(m) -= h;
        const double fp = -aep(rp, scheme, tensor, rose, turbine).aep_gwh;
        const double fm = -aep(rm, scheme, tensor, rose, turbine).aep_gwh;
        const double fd = (fp - fm) / (2.0 * h);
        // Mixed tolerance: gradient entries below ~0.1% of the largest one
        // sit at the round-off floor of central differences (the objective
        // is ~500 GWh, so the FD noise is ~1e-7 GWh per unit density), where
        // a purely relative comparison only measures that noise.
        const double scale =
            std::max({std::abs(fd), std::abs(base.gradient(m)),
                      1e-3 * base.gradient.cwiseAbs().maxCoeff()});
        const double rel = std::abs(base.gradient(m) - fd) / scale;
        worst = std::max(worst, rel);
        ++checked;
        if (rel >= 1e-5) pass = false;
      }
    }
  }

  const double secs = elapsed(start);
  char detail[160];
  std::snprintf(detail, sizeof(detail), "checked=%lld skipped=%lld worst_rel=%.3g", checked,
                skipped, worst);
  report(2, "analytic gradient matches central differences", pass && secs < 120.0, secs, detail);
}

// --- criteria 3, 4 and 6 ---------------------------------------------------

struct ExampleOutcome {
  bool pass = false;
  double aep_gwh = 0.0;
};

ExampleOutcome run_example(int criterion, const char* title, double radius, GridMode mode,
                           Eigen::Index n_min, Eigen::Index n_max, double initial_density,
                           double reference_gwh, double budget_seconds) {
  const auto start = Clock::now();
  const auto grid = generate_circular_grid(radius, 200.0, mode);
  const auto problem = make_problem(grid, TurbineSpec{}, site_rose(), default_params(), n_min,
                                    n_max, 2.0, InterpolationKind::ramp);
  const auto result = mma_solve(problem, paper_mma(initial_density));
  const double secs = elapsed(start);

  const bool count_ok = result.turbine_count >= n_min && result.turbine_count <= n_max;
  const bool band_ok = std::abs(result.aep_gwh - reference_gwh) <= 0.03 * reference_gwh;
  const bool pass = result.feasible && count_ok && band_ok && secs < budget_seconds;

  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "aep=%.3f GWh (reference %.3f +-3%%) turbines=%d iterations=%d feasible=%d",
                result.aep_gwh, reference_gwh, result.turbine_count, result.iterations,
                result.feasible ? 1 : 0);
  report(criterion, title, pass, secs, detail);
  return {pass, result.aep_gwh};
}

// --- criterion 5 -----------------------------------------------------------

void criterion_toy_oracles() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> site_count(6, 12);
  std::uniform_real_distribution<double> coord(0.0, 1100.0);
  std::uniform_real_distribution<double> freq(0.2, 1.0);
  std::uniform_real_distribution<double> jitter(0.0, 20.0);

  bool pass = true;
  int ga_matches = 0, mma_ok = 0;
  const int instances = 25;

  for (int inst = 0; inst < instances && pass; ++inst) {
    const int n = site_count(rng);
    CandidateGrid grid;
    grid.x.resize(n);
    grid.y.resize(n);
    for (int i = 0; i < n; ++i) {
      for (int attempt = 0;; ++attempt) {
        const double x = coord(rng), y = coord(rng);
        bool ok = true;
        for (int j = 0; j < i && ok; ++j)
          ok = std::hypot(x - grid.x(j), y - grid.y(j)) >= 150.0;
        if (ok || attempt > 5000) {
          grid.x(i) = x;
          grid.y(i) = y;
          break;
        }
      }
    }
    grid.boundary_radius = 1600.0;

    WindRose rose;
    double total = 0.0;
    for (int b = 0; b < 4; ++b) {
      const double f = freq(rng);
      rose.bins.push_back({90.0 * b + jitter(rng), f, 9.8});
      total += f;
    }
    for (auto& bin : rose.bins) bin.frequency /= total;

    const auto problem = make_problem(grid, TurbineSpec{}, rose, default_params(), 1,
                                      static_cast<Eigen::Index>(n));

    const auto exact = brute_force_solve(problem);
    if (!exact.feasible) {
      pass = false;
      break;
    }

    GaSettings ga;
    ga.population = 500;
    ga.seed = 7 + static_cast<std::uint64_t>(inst);
    const auto evolved = ga_solve(problem, ga);
    const bool ga_ok =
        evolved.feasible && std::abs(evolved.aep_gwh - exact.aep_gwh) <= 1e-9 * exact.aep_gwh;
    if (ga_ok) ++ga_matches;

    MmaSettings mma = paper_mma(0.2);
    const auto relaxed = mma_solve(problem, mma);
    const bool relaxed_ok = relaxed.feasible && relaxed.aep_gwh >= 0.95 * exact.aep_gwh;
    if (relaxed_ok) ++mma_ok;

    if (!ga_ok || !relaxed_ok) pass = false;
  }

  const double secs = elapsed(start);
  char detail[160];
  std::snprintf(detail, sizeof(detail), "ga_exact=%d/%d mma_ge_95pct=%d/%d", ga_matches, instances,
                mma_ok, instances);
  report(5, "toy instances agree with the enumeration oracle", pass && secs < 300.0, secs, detail);
}

// --- criterion 6 -----------------------------------------------------------

void criterion_self_penalization(double continuation_aep) {
  const auto start = Clock::now();
  const auto grid = generate_circular_grid(1300.0, 200.0, GridMode::offset);
  const auto problem = make_problem(grid, TurbineSpec{}, site_rose(), default_params(), 16, 64,
                                    2.0, InterpolationKind::ramp);
  MmaSettings settings = paper_mma(0.2);
  settings.q_max = 0.0;  // penalty frozen at zero
  settings.q_bar = 0.0;
  const auto result = mma_solve(problem, settings);
  const double secs = elapsed(start);

  Eigen::Index intermediate = 0;
  for (Eigen::Index i = 0; i < result.rho.size(); ++i)
    if (result.rho(i) > 0.05 && result.rho(i) < 0.95) ++intermediate;
  const double fraction = double(intermediate) / double(result.rho.size());

  const bool terminated = result.termination == "converged" || result.iterations < 1000;
  const bool near_binary = fraction < 0.05;
  const bool band_ok = continuation_aep > 0.0 &&
                       std::abs(result.aep_gwh - continuation_aep) <= 0.03 * continuation_aep;

  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "aep=%.3f GWh (continuation %.3f) intermediate=%lld/%lld (%.1f%%)", result.aep_gwh,
                continuation_aep, static_cast<long long>(intermediate),
                static_cast<long long>(result.rho.size()), 100.0 * fraction);
  report(6, "fixed q = 0 self-penalizes to a near-binary design",
         terminated && near_binary && band_ok, secs, detail);
}

// --- criterion 7 -----------------------------------------------------------

void criterion_binary_consistency() {
  const auto start = Clock::now();
  const auto grid = generate_circular_grid(1300.0, 200.0, GridMode::offset);
  const auto rose = site_rose();
  const TurbineSpec turbine;
  // No lower volume bound: layouts are grown one turbine at a time, so the
  // incremental feasibility probe must only see the spacing rule.
  const auto problem = make_problem(grid, turbine, rose, default_params(), 0, 64);
  const Eigen::Index n = grid.size();

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  bool pass = true;
  double worst = 0.0;

  for (int layout = 0; layout < 10; ++layout) {
    // Greedily place 16-40 turbines respecting the spacing rule.
    std::vector<int> selected(static_cast<std::size_t>(n), 0);
    std::uniform_int_distribution<int> target(16, 40);
    int want = target(rng), placed = 0;
    for (int attempt = 0; attempt < 20000 && placed < want; ++attempt) {
      const Eigen::Index i = pick(rng);
      if (selected[static_cast<std::size_t>(i)]) continue;
      selected[static_cast<std::size_t>(i)] = 1;
      if (is_feasible_binary(selected, problem)) {
        ++placed;
      } else {
        selected[static_cast<std::size_t>(i)] = 0;
      }
    }
    if (placed < 16) {
      pass = false;
      break;
    }

    const double model = binary_aep(selected, problem);
    const double simulated =
        wf::testing::simulate_binary_aep(grid, selected, turbine, rose, 0.075);
    const double rel = std::abs(model - simulated) / simulated;
    worst = std::max(worst, rel);
    if (rel > 1e-9) pass = false;
  }

  const double secs = elapsed(start);
  char detail[96];
  std::snprintf(detail, sizeof(detail), "worst_rel=%.3g", worst);
  report(7, "model aep equals an independent wake simulation", pass, secs, detail);
}

}  // namespace

int main(int argc, char** argv) {
  bool extended = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--extended") extended = true;

  criterion_grid_counts();
  criterion_gradient();
  const ExampleOutcome example1 =
      run_example(3, "124-site reproduction with continuation", 1300.0, GridMode::offset, 16, 64,
                  0.2, 580.638, 60.0);
  if (extended) {
    run_example(4, "709-site reproduction with continuation", 3000.0, GridMode::centered, 64, 256,
                0.1805, 2190.576, 900.0);
  } else {
    std::printf("[SKIP] criterion 4: 709-site reproduction (run with --extended)\n");
  }
  criterion_toy_oracles();
  criterion_self_penalization(example1.aep_gwh);
  criterion_binary_consistency();

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
