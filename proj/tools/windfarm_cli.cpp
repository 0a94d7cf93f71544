#include <CLI11.hpp>
#include <iostream>

#include "windfarm/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Wind farm layout optimization by density-based topology optimization"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool have_seed = false;
  wf::RunOptions options;

  CLI::App* run_cmd = app.add_subcommand("run", "Run a solve described by a JSON config");
  run_cmd->add_option("config", config_path, "Path to the run config (JSON)")->required();
  CLI::Option* out_opt = run_cmd->add_option("--out", out_dir, "Output directory override");
  CLI::Option* seed_opt = run_cmd->add_option("--seed", seed, "Random seed override");
  run_cmd->add_flag("--dump-tensor", options.dump_tensor,
                    "Also write one deficit CSV per direction bin");
  run_cmd->add_option("--flow-direction", options.flow_direction_deg,
                      "Incoming direction for the flow-field plot [deg]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? wf::kExitOk : wf::kExitConfigError;
  }

  if (*out_opt) options.output_dir = out_dir;
  have_seed = static_cast<bool>(*seed_opt);
  if (have_seed) options.seed = seed;

  return wf::run(config_path, options, std::cout, std::cerr);
}
