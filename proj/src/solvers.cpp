#include "windfarm/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <bit>
#include <numeric>
#include <random>
#include <stdexcept>

#include "windfarm/mma.hpp"

namespace wf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Eigen::VectorXd to_density(const std::vector<int>& selected) {
  Eigen::VectorXd rho(static_cast<Eigen::Index>(selected.size()));
  for (std::size_t i = 0; i < selected.size(); ++i) rho(static_cast<Eigen::Index>(i)) = selected[i];
  return rho;
}

/// Total constraint violation of a binary layout, in count units for the
/// volume part plus one unit per violated unordered neighbor pair.
double binary_violation(const std::vector<int>& sel, const LayoutProblem& p) {
  long long count = 0;
  for (int b : sel) count += b;
  double v = std::max(0.0, double(p.constraints.n_min - count)) +
             std::max(0.0, double(count - p.constraints.n_max));
  for (std::size_t i = 0; i < sel.size(); ++i) {
    if (!sel[i]) continue;
    for (Eigen::Index j : p.constraints.neighbors[i])
      if (static_cast<std::size_t>(j) > i && sel[static_cast<std::size_t>(j)]) v += 1.0;
  }
  return v;
}

}  // namespace

void MmaSettings::validate() const {
  if (!(q_min <= q_bar && q_bar <= q_max)) throw std::invalid_argument("mma: need q_min <= q_bar <= q_max");
  if (q_step <= 0.0) throw std::invalid_argument("mma: q step must be > 0");
  if (q_step_interval < 1) throw std::invalid_argument("mma: q step interval must be >= 1");
  if (!(move_limit > 0.0 && move_limit <= 1.0)) throw std::invalid_argument("mma: move limit in (0, 1]");
  if (max_iterations < 1) throw std::invalid_argument("mma: iteration cap must be >= 1");
  if (step_tolerance <= 0.0) throw std::invalid_argument("mma: step tolerance must be > 0");
  if (initial_density < 0.0 || initial_density > 1.0)
    throw std::invalid_argument("mma: initial density in [0, 1]");
}

void GaSettings::validate() const {
  if (population < 2) throw std::invalid_argument("ga: population must be >= 2");
  if (max_generations < 1) throw std::invalid_argument("ga: generations must be >= 1");
  if (stall_generations < 1) throw std::invalid_argument("ga: stall limit must be >= 1");
}

LayoutProblem make_problem(CandidateGrid grid, TurbineSpec turbine, WindRose rose,
                           WakeParams wake, Eigen::Index n_min, Eigen::Index n_max,
                           double spacing_factor, InterpolationKind interpolation) {
  turbine.validate();
  wake.validate();
  rose.validate();
  if (n_min < 0 || n_min > n_max || n_max > grid.size())
    throw std::invalid_argument("problem: need 0 <= N_min <= N_max <= N");

  LayoutProblem p;
  p.tensor = precompute_deficit_tensor(grid, rose, turbine, wake);
  p.constraints = build_spacing(grid, turbine, spacing_factor);
  p.constraints.n_min = n_min;
  p.constraints.n_max = n_max;
  p.constraints.v_min = double(n_min) / double(grid.size());
  p.constraints.v_max = double(n_max) / double(grid.size());
  p.grid = std::move(grid);
  p.turbine = turbine;
  p.rose = std::move(rose);
  p.wake = wake;
  p.interpolation = interpolation;
  return p;
}

double binary_aep(const std::vector<int>& selected, const LayoutProblem& problem) {
  const InterpolationScheme linear{InterpolationKind::linear, 0.0};
  return aep(to_density(selected), linear, problem.tensor, problem.rose, problem.turbine).aep_gwh;
}

bool is_feasible_binary(const std::vector<int>& selected, const LayoutProblem& problem) {
  return binary_violation(selected, problem) == 0.0;
}

RoundedDesign round_design(const Eigen::VectorXd& rho, const LayoutProblem& problem,
                           double threshold) {
  RoundedDesign out;
  out.selected.resize(static_cast<std::size_t>(rho.size()));
  for (Eigen::Index i = 0; i < rho.size(); ++i)
    out.selected[static_cast<std::size_t>(i)] = rho(i) >= threshold ? 1 : 0;

  double viol = binary_violation(out.selected, problem);
  if (viol == 0.0) {
    out.feasible = true;
    return out;
  }

  out.repair_applied = true;
  const std::size_t n = out.selected.size();
  for (std::size_t flips = 0; flips < n && viol > 0.0; ++flips) {
    double best = viol;
    std::size_t best_i = n;
    for (std::size_t i = 0; i < n; ++i) {
      out.selected[i] ^= 1;
      const double v = binary_violation(out.selected, problem);
      out.selected[i] ^= 1;
      if (v < best) {
        best = v;
        best_i = i;
      }
    }
    if (best_i == n) break;  // no flip improves
    out.selected[best_i] ^= 1;
    viol = best;
  }
  out.feasible = viol == 0.0;
  return out;
}

SolveResult mma_solve(const LayoutProblem& problem, const MmaSettings& settings,
                      std::ostream* log) {
  settings.validate();
  const auto start = Clock::now();
  const Eigen::Index n = problem.sites();
  const Eigen::Index m_spacing = problem.constraints.spacing_rows();
  const Eigen::Index m = 2 + m_spacing;

  // Constant Jacobian: both volume rows plus the spacing matrix.
  Eigen::SparseMatrix<double, Eigen::RowMajor> jac(m, n);
  {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(2 * n + problem.constraints.spacing_matrix.nonZeros()));
    for (Eigen::Index j = 0; j < n; ++j) {
      trip.emplace_back(0, j, -1.0 / double(n));
      trip.emplace_back(1, j, 1.0 / double(n));
    }
    const auto& h = problem.constraints.spacing_matrix;
    for (Eigen::Index r = 0; r < h.rows(); ++r)
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h, r); it; ++it)
        trip.emplace_back(r + 2, it.col(), it.value());
    jac.setFromTriplets(trip.begin(), trip.end());
  }

  InterpolationScheme scheme{problem.interpolation, 0.0};
  auto effective_penalty = [&](double q) {
    return problem.interpolation == InterpolationKind::simp ? std::max(1.0, q) : q;
  };

  Eigen::VectorXd rho = Eigen::VectorXd::Constant(n, settings.initial_density);

  // Objective scaled by 1/AEP(rho0) so the subproblems stay O(1).
  scheme.penalty = effective_penalty(settings.q_min);
  const double aep0 = aep(rho, scheme, problem.tensor, problem.rose, problem.turbine).aep_gwh;
  const double scale = 1.0 / std::max(std::abs(aep0), 1e-12);

  MmaOptimizer optimizer(n);
  SolveResult result;
  result.termination = "max_iterations";

  double q = settings.q_min;
  for (int it = 1; it <= settings.max_iterations; ++it) {
    scheme.penalty = effective_penalty(q);
    const ObjectiveReport report = aep(rho, scheme, problem.tensor, problem.rose, problem.turbine);
    ++result.evaluations;

    const VolumeConstraints vc =
        volume_constraints(rho, problem.constraints.n_min, problem.constraints.n_max);
    Eigen::VectorXd g(m);
    g(0) = vc.g_min;
    g(1) = vc.g_max;
    g.tail(m_spacing) = spacing_values(rho, problem.constraints);

    if (!std::isfinite(report.aep_gwh) || !report.gradient.allFinite())
      throw std::runtime_error("mma: non-finite objective at iteration " + std::to_string(it));

    const Eigen::VectorXd rho_next =
        optimizer.update(rho, scale * report.gradient, g, jac, settings.move_limit);
    const double step = (rho_next - rho).norm();

    result.history.push_back({it, scheme.penalty, report.aep_gwh, g.maxCoeff(), step});
    if (settings.keep_iterates) result.iterates.push_back(rho);
    if (log)
      *log << "iter " << it << " q " << scheme.penalty << " aep_gwh " << report.aep_gwh
           << " max_violation " << g.maxCoeff() << " step " << step << '\n';

    rho = rho_next;
    result.iterations = it;

    if (step < settings.step_tolerance && q >= settings.q_bar) {
      result.termination = "converged";
      break;
    }
    if (it % settings.q_step_interval == 0) q = std::min(q + settings.q_step, settings.q_max);
  }

  result.rho = rho;
  RoundedDesign rounded = round_design(rho, problem);
  result.selected = std::move(rounded.selected);
  result.repair_applied = rounded.repair_applied;
  result.feasible = rounded.feasible;
  if (!rounded.feasible) result.termination += "+rounding_infeasible";
  result.turbine_count =
      static_cast<int>(std::count(result.selected.begin(), result.selected.end(), 1));
  result.aep_gwh = binary_aep(result.selected, problem);
  result.wall_seconds = seconds_since(start);
  return result;
}

SolveResult ga_solve(const LayoutProblem& problem, const GaSettings& settings,
                     std::ostream* log) {
  settings.validate();
  const auto start = Clock::now();
  const std::size_t n = static_cast<std::size_t>(problem.sites());
  const int pop_size = settings.population;

  std::mt19937_64 rng(settings.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, pop_size - 1);

  const double mutation_rate = 1.0 / double(n);
  constexpr double crossover_rate = 0.8;
  constexpr double kDead = -std::numeric_limits<double>::infinity();

  // Seed the population with spacing-feasible layouts: visit the sites in a
  // random order and place a turbine wherever no already-placed neighbor
  // conflicts, stopping at a random count inside [n_min, n_max]. A Bernoulli
  // fill would almost surely violate spacing on dense grids, leaving the
  // death penalty with nothing to select from.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uniform_int_distribution<Eigen::Index> target_count(problem.constraints.n_min,
                                                           problem.constraints.n_max);
  std::vector<std::vector<int>> pop(pop_size, std::vector<int>(n, 0));
  for (auto& ind : pop) {
    std::shuffle(order.begin(), order.end(), rng);
    const Eigen::Index target = target_count(rng);
    Eigen::Index placed = 0;
    for (const std::size_t s : order) {
      if (placed >= target) break;
      bool free = true;
      for (const Eigen::Index nb : problem.constraints.neighbors[s])
        if (ind[static_cast<std::size_t>(nb)] != 0) {
          free = false;
          break;
        }
      if (free) {
        ind[s] = 1;
        ++placed;
      }
    }
  }

  SolveResult result;
  std::vector<double> fitness(pop_size);
  auto evaluate = [&](const std::vector<int>& ind) {
    ++result.evaluations;
    return is_feasible_binary(ind, problem) ? binary_aep(ind, problem) : kDead;
  };

  std::vector<int> best;
  double best_fit = kDead;
  int stall = 0;
  result.termination = "max_generations";

  for (int gen = 1; gen <= settings.max_generations; ++gen) {
    for (int i = 0; i < pop_size; ++i) fitness[i] = evaluate(pop[i]);

    int gen_best = 0;
    for (int i = 1; i < pop_size; ++i)
      if (fitness[i] > fitness[gen_best]) gen_best = i;

    if (fitness[gen_best] > best_fit + settings.function_tolerance) {
      stall = 0;
    } else {
      ++stall;
    }
    if (fitness[gen_best] > best_fit) {
      best_fit = fitness[gen_best];
      best = pop[gen_best];
    }

    result.history.push_back({gen, 0.0, std::isfinite(best_fit) ? best_fit : 0.0, 0.0, 0.0});
    result.iterations = gen;
    if (log)
      *log << "gen " << gen << " best_aep_gwh " << (std::isfinite(best_fit) ? best_fit : 0.0)
           << '\n';

    if (stall >= settings.stall_generations) {
      result.termination = "stall";
      break;
    }
    if (gen == settings.max_generations) break;

    std::vector<std::vector<int>> next;
    next.reserve(pop_size);
    if (!best.empty()) next.push_back(best);  // elitism

    auto tournament = [&]() -> const std::vector<int>& {
      const int a = pick(rng), b = pick(rng);
      return fitness[a] >= fitness[b] ? pop[a] : pop[b];
    };

    while (static_cast<int>(next.size()) < pop_size) {
      const std::vector<int>& pa = tournament();
      const std::vector<int>& pb = tournament();
      std::vector<int> child(n);
      if (unit(rng) < crossover_rate) {
        for (std::size_t j = 0; j < n; ++j) child[j] = unit(rng) < 0.5 ? pa[j] : pb[j];
      } else {
        child = pa;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (unit(rng) < mutation_rate) child[j] ^= 1;
      next.push_back(std::move(child));
    }
    pop = std::move(next);
  }

  if (best.empty()) {
    result.termination = "no_feasible_individual";
    result.rho.setZero(static_cast<Eigen::Index>(n));
    result.selected.assign(n, 0);
    result.wall_seconds = seconds_since(start);
    return result;
  }

  result.selected = best;
  result.rho = to_density(best);
  result.turbine_count = static_cast<int>(std::count(best.begin(), best.end(), 1));
  result.aep_gwh = best_fit;
  result.feasible = true;
  result.wall_seconds = seconds_since(start);
  return result;
}

SolveResult brute_force_solve(const LayoutProblem& problem) {
  const Eigen::Index n = problem.sites();
  if (n > 20) throw std::invalid_argument("brute force: refusing more than 20 sites");

  // Per-site neighbor bitmasks make the spacing check O(N) per layout.
  std::vector<std::uint32_t> nbr_mask(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j : problem.constraints.neighbors[static_cast<std::size_t>(i)])
      nbr_mask[static_cast<std::size_t>(i)] |= (1u << j);

  const auto start = Clock::now();
  SolveResult result;
  result.termination = "exhaustive";
  double best = -std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 0;
  bool found = false;

  std::vector<int> sel(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int count = std::popcount(mask);
    if (count < problem.constraints.n_min || count > problem.constraints.n_max) continue;
    bool ok = true;
    for (Eigen::Index i = 0; i < n && ok; ++i)
      if ((mask >> i) & 1u) ok = (mask & nbr_mask[static_cast<std::size_t>(i)]) == 0;
    if (!ok) continue;

    for (Eigen::Index i = 0; i < n; ++i) sel[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    const double value = binary_aep(sel, problem);
    ++result.evaluations;
    if (!found || value > best) {
      best = value;
      best_mask = mask;
      found = true;
    }
  }

  if (!found) {
    result.termination = "no_feasible_layout";
    result.rho.setZero(n);
    result.selected.assign(static_cast<std::size_t>(n), 0);
    result.wall_seconds = seconds_since(start);
    return result;
  }

  for (Eigen::Index i = 0; i < n; ++i) sel[static_cast<std::size_t>(i)] = (best_mask >> i) & 1u;
  result.selected = sel;
  result.rho = to_density(sel);
  result.turbine_count = std::popcount(best_mask);
  result.aep_gwh = best;
  result.feasible = true;
  result.iterations = 1;
  result.wall_seconds = seconds_since(start);
  return result;
}

}  // namespace wf
