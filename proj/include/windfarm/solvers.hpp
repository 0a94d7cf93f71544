#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "windfarm/constraints.hpp"
#include "windfarm/grid.hpp"
#include "windfarm/objective.hpp"
#include "windfarm/turbine.hpp"
#include "windfarm/wake.hpp"
#include "windfarm/wind_rose.hpp"

namespace wf {

/// Everything a solver needs: geometry, climate, precomputed wakes and the
/// constraint system. The deficit tensor never depends on the densities.
struct LayoutProblem {
  CandidateGrid grid;
  TurbineSpec turbine;
  WindRose rose;
  WakeParams wake;
  DeficitTensor tensor;
  ConstraintSystem constraints;
  InterpolationKind interpolation = InterpolationKind::ramp;

  Eigen::Index sites() const { return grid.size(); }
};

LayoutProblem make_problem(CandidateGrid grid, TurbineSpec turbine, WindRose rose,
                           WakeParams wake, Eigen::Index n_min, Eigen::Index n_max,
                           double spacing_factor = 2.0,
                           InterpolationKind interpolation = InterpolationKind::ramp);

struct MmaSettings {
  double q_min = 0.0;
  double q_step = 0.5;
  int q_step_interval = 10;
  double q_max = 10.0;
  double q_bar = 3.0;  // continuation floor before the step criterion may fire
  double move_limit = 0.1;
  int max_iterations = 1000;
  double step_tolerance = 1e-8;
  double initial_density = 0.2;
  bool keep_iterates = false;

  void validate() const;
};

struct GaSettings {
  int population = 5000;
  int stall_generations = 100;
  double function_tolerance = 1e-8;
  int max_generations = 1000;
  std::uint64_t seed = 1;

  void validate() const;
};

struct IterationRecord {
  int iteration;
  double penalty;
  double aep_gwh;
  double max_violation;
  double step_norm;
};

struct SolveResult {
  Eigen::VectorXd rho;            // final continuous densities
  std::vector<int> selected;      // rounded binary layout
  int turbine_count = 0;
  double aep_gwh = 0.0;           // AEP of the binary layout
  int iterations = 0;
  long long evaluations = 0;
  std::vector<IterationRecord> history;
  std::vector<Eigen::VectorXd> iterates;  // filled only when requested
  std::string termination;
  bool feasible = false;
  bool repair_applied = false;
  double wall_seconds = 0.0;
};

struct RoundedDesign {
  std::vector<int> selected;
  bool feasible = false;
  bool repair_applied = false;
};

/// Threshold at 0.5, then greedy repair: while any volume or spacing
/// constraint is violated, flip the bit whose flip most reduces the total
/// violation (ties to the lowest index), giving up after N flips.
RoundedDesign round_design(const Eigen::VectorXd& rho, const LayoutProblem& problem,
                           double threshold = 0.5);

/// Relaxed problem solved by MMA with RAMP/SIMP continuation and moving
/// limits. Terminates when the step norm drops below the tolerance with the
/// penalty at or above its floor, or at the iteration cap.
SolveResult mma_solve(const LayoutProblem& problem, const MmaSettings& settings,
                      std::ostream* log = nullptr);

/// Binary problem solved by a generational GA: tournament selection (k = 2),
/// uniform crossover (rate 0.8), bit-flip mutation (rate 1/N), elitism, and
/// a death penalty for infeasible individuals. Deterministic under a fixed
/// seed.
SolveResult ga_solve(const LayoutProblem& problem, const GaSettings& settings,
                     std::ostream* log = nullptr);

/// Exact enumeration of all 2^N layouts, N <= 20. Ties keep the
/// lexicographically smallest selection (lowest indices first).
SolveResult brute_force_solve(const LayoutProblem& problem);

/// AEP of a binary layout (linear interpolation; binary densities are fixed
/// points of every scheme).
double binary_aep(const std::vector<int>& selected, const LayoutProblem& problem);

bool is_feasible_binary(const std::vector<int>& selected, const LayoutProblem& problem);

}  // namespace wf
