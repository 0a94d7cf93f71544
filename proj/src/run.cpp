#include "windfarm/run.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "windfarm/flow_field.hpp"
#include "windfarm/svg.hpp"

namespace wf {

namespace {

namespace fs = std::filesystem;

/// Temp-file + rename so a failed run never leaves partial artifacts.
void write_atomic(const fs::path& target, const std::string& content) {
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string layout_csv(const CandidateGrid& grid, const SolveResult& result) {
  std::string csv = "index,x,y,rho,selected\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    csv += std::to_string(i) + "," + format_double(grid.x(i)) + "," + format_double(grid.y(i)) +
           "," + format_double(result.rho(i)) + "," +
           std::to_string(result.selected[static_cast<std::size_t>(i)]) + "\n";
  }
  return csv;
}

std::string history_csv(const SolveResult& result) {
  std::string csv = "iteration,penalty,aep_gwh,max_violation,step_norm\n";
  for (const auto& r : result.history) {
    csv += std::to_string(r.iteration) + "," + format_double(r.penalty) + "," +
           format_double(r.aep_gwh) + "," + format_double(r.max_violation) + "," +
           format_double(r.step_norm) + "\n";
  }
  return csv;
}

std::string flow_field_csv(const FlowField& field) {
  std::string csv = "x,y,speed_ms\n";
  for (Eigen::Index row = 0; row < field.ny; ++row)
    for (Eigen::Index col = 0; col < field.nx; ++col)
      csv += format_double(field.x0 + col * field.resolution) + "," +
             format_double(field.y0 + row * field.resolution) + "," +
             format_double(field.speed(row, col)) + "\n";
  return csv;
}

std::string tensor_csv(const Eigen::MatrixXd& w) {
  std::string csv;
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      csv += format_double(w(r, c));
      csv += (c + 1 < w.cols()) ? ',' : '\n';
    }
  }
  return csv;
}

}  // namespace

int run(const std::string& config_path, const RunOptions& options, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CandidateGrid grid;
  WindRose rose;
  try {
    cfg = load_config(config_path);
    if (options.output_dir) cfg.output_dir = *options.output_dir;
    if (options.seed) {
      cfg.seed = *options.seed;
      cfg.ga.seed = *options.seed;
    }
    grid = (cfg.grid_mode == GridMode::external)
               ? load_grid(cfg.grid_file)
               : generate_circular_grid(cfg.grid_radius, cfg.grid_spacing, cfg.grid_mode);
    rose = load_wind_rose(cfg.wind_rose_path);
    if (cfg.n_max > grid.size()) throw std::runtime_error("config: n_max exceeds grid size");
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  SolveResult result;
  LayoutProblem problem;
  try {
    WakeParams wake;
    wake.turbulence_intensity = cfg.turbulence_intensity;
    problem = make_problem(std::move(grid), cfg.turbine, std::move(rose), wake, cfg.n_min,
                           cfg.n_max, cfg.spacing_factor, cfg.interpolation);

    switch (cfg.solver) {
      case SolverChoice::mma:
        result = mma_solve(problem, cfg.mma, &out);
        break;
      case SolverChoice::ga:
        result = ga_solve(problem, cfg.ga, &out);
        break;
      case SolverChoice::brute:
        result = brute_force_solve(problem);
        break;
    }
    if (!result.feasible) throw std::runtime_error("solver finished without a feasible layout (" +
                                                   result.termination + ")");
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverFailure;
  }

  try {
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    write_atomic(dir / "layout.csv", layout_csv(problem.grid, result));
    write_atomic(dir / "history.csv", history_csv(result));

    nlohmann::json rj;
    rj["aep_gwh"] = result.aep_gwh;
    rj["turbine_count"] = result.turbine_count;
    rj["iterations"] = result.iterations;
    rj["evaluations"] = result.evaluations;
    rj["termination"] = result.termination;
    rj["wall_seconds"] = result.wall_seconds;
    rj["solver"] = cfg.solver == SolverChoice::mma   ? "mma"
                   : cfg.solver == SolverChoice::ga ? "ga"
                                                    : "brute";
    rj["config_hash"] = config_hash(config_path);
    write_atomic(dir / "result.json", rj.dump(2) + "\n");

    write_atomic(dir / "layout.svg",
                 plot_layout(problem.grid, result.selected, cfg.turbine, cfg.spacing_factor));
    if (!result.history.empty())
      write_atomic(dir / "history.svg", plot_history(result.history));
    write_atomic(dir / "density_histogram.svg", plot_density_histogram(result.rho));

    const double v_inf = problem.rose.bins.front().speed;
    const FlowField field =
        evaluate_flow_field(problem.grid, result.selected, cfg.turbine, problem.wake, v_inf,
                            options.flow_direction_deg, cfg.turbine.rotor_diameter / 4.0);
    write_atomic(dir / "flow_field.csv", flow_field_csv(field));
    write_atomic(dir / "flow_field.svg",
                 plot_flow_field(field, problem.grid, result.selected, v_inf));

    if (options.dump_tensor) {
      for (std::size_t i = 0; i < problem.tensor.directions(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "deficit_bin_%03zu.csv", i);
        write_atomic(dir / name, tensor_csv(problem.tensor.deficit[i]));
      }
    }

    out << "aep_gwh " << result.aep_gwh << " turbines " << result.turbine_count << " iterations "
        << result.iterations << " (" << result.termination << ")\n";
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitOk;
}

}  // namespace wf
