#pragma once

#include <optional>
#include <string>

#include "windfarm/config.hpp"

namespace wf {

struct RunOptions {
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  bool dump_tensor = false;
  double flow_direction_deg = 270.0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverFailure = 3;

/// Loads the config, runs precomputation and the selected solver, and
/// persists layout.csv, result.json, history.csv and the SVG set into the
/// output directory. All files are written atomically (temp + rename).
/// Returns a process exit code; diagnostics go to the error stream.
int run(const std::string& config_path, const RunOptions& options, std::ostream& out,
        std::ostream& err);

}  // namespace wf
