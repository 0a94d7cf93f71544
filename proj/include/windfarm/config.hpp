#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "windfarm/grid.hpp"
#include "windfarm/objective.hpp"
#include "windfarm/solvers.hpp"
#include "windfarm/turbine.hpp"
#include "windfarm/wake.hpp"

namespace wf {

enum class SolverChoice { mma, ga, brute };

/// One optimization run, loaded from a versioned JSON document. Relative
/// data paths resolve against the config file's directory.
struct RunConfig {
  // grid: either generated (radius/spacing/mode) or loaded from file
  GridMode grid_mode = GridMode::offset;
  double grid_radius = 0.0;
  double grid_spacing = 0.0;
  std::string grid_file;

  TurbineSpec turbine;
  std::string wind_rose_path;
  double turbulence_intensity = 0.075;

  Eigen::Index n_min = 0;
  Eigen::Index n_max = 0;
  double spacing_factor = 2.0;
  InterpolationKind interpolation = InterpolationKind::ramp;

  SolverChoice solver = SolverChoice::mma;
  MmaSettings mma;
  GaSettings ga;

  std::string output_dir = "out";
  std::uint64_t seed = 1;

  std::string source_path;  // config file location, for hashing and paths
};

/// Parses and validates a config file. Throws std::runtime_error with a
/// descriptive message on any schema or validation problem.
RunConfig load_config(const std::string& path);

/// FNV-1a hash of the raw config file bytes, as a hex string.
std::string config_hash(const std::string& path);

}  // namespace wf
