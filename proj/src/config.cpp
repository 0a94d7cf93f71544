#include "windfarm/config.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace wf {

namespace {

using nlohmann::json;

std::string resolve(const std::string& base_file, const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(base_file).parent_path() / p).string();
}

GridMode parse_mode(const std::string& s) {
  if (s == "centered") return GridMode::centered;
  if (s == "offset") return GridMode::offset;
  if (s == "external") return GridMode::external;
  throw std::runtime_error("config: unknown grid mode '" + s + "'");
}

InterpolationKind parse_kind(const std::string& s) {
  if (s == "ramp") return InterpolationKind::ramp;
  if (s == "simp") return InterpolationKind::simp;
  if (s == "linear") return InterpolationKind::linear;
  throw std::runtime_error("config: unknown interpolation kind '" + s + "'");
}

SolverChoice parse_solver(const std::string& s) {
  if (s == "mma") return SolverChoice::mma;
  if (s == "ga") return SolverChoice::ga;
  if (s == "brute") return SolverChoice::brute;
  throw std::runtime_error("config: unknown solver '" + s + "'");
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("config: JSON parse error in " + path + ": " + e.what());
  }

  try {
    if (doc.value("version", 0) != 1)
      throw std::runtime_error("config: unsupported schema version");

    RunConfig cfg;
    cfg.source_path = path;

    const json& grid = doc.at("grid");
    cfg.grid_mode = parse_mode(grid.at("mode").get<std::string>());
    if (cfg.grid_mode == GridMode::external) {
      cfg.grid_file = resolve(path, grid.at("file").get<std::string>());
      if (!std::filesystem::exists(cfg.grid_file))
        throw std::runtime_error("config: grid file not found: " + cfg.grid_file);
    } else {
      cfg.grid_radius = grid.at("radius").get<double>();
      cfg.grid_spacing = grid.at("spacing").get<double>();
    }

    if (doc.contains("turbine")) {
      const json& t = doc.at("turbine");
      cfg.turbine.rotor_diameter = t.value("rotor_diameter", cfg.turbine.rotor_diameter);
      cfg.turbine.hub_height = t.value("hub_height", cfg.turbine.hub_height);
      cfg.turbine.rated_power = t.value("rated_power_mw", cfg.turbine.rated_power);
      cfg.turbine.cut_in = t.value("cut_in", cfg.turbine.cut_in);
      cfg.turbine.rated_speed = t.value("rated_speed", cfg.turbine.rated_speed);
      cfg.turbine.cut_out = t.value("cut_out", cfg.turbine.cut_out);
      cfg.turbine.thrust_coefficient = t.value("thrust_coefficient", cfg.turbine.thrust_coefficient);
    }
    cfg.turbine.validate();

    cfg.wind_rose_path = resolve(path, doc.at("wind_rose").get<std::string>());
    if (!std::filesystem::exists(cfg.wind_rose_path))
      throw std::runtime_error("config: wind rose file not found: " + cfg.wind_rose_path);
    cfg.turbulence_intensity = doc.value("turbulence_intensity", 0.075);
    if (cfg.turbulence_intensity <= 0.0)
      throw std::runtime_error("config: turbulence intensity must be > 0");

    cfg.n_min = doc.at("n_min").get<Eigen::Index>();
    cfg.n_max = doc.at("n_max").get<Eigen::Index>();
    if (cfg.n_min < 0 || cfg.n_min > cfg.n_max)
      throw std::runtime_error("config: need 0 <= n_min <= n_max");
    cfg.spacing_factor = doc.value("spacing_factor", 2.0);
    if (cfg.spacing_factor <= 0.0) throw std::runtime_error("config: spacing factor must be > 0");

    cfg.interpolation = parse_kind(doc.value("interpolation", std::string("ramp")));
    cfg.solver = parse_solver(doc.at("solver").get<std::string>());

    if (doc.contains("mma")) {
      const json& m = doc.at("mma");
      cfg.mma.q_min = m.value("q_min", cfg.mma.q_min);
      cfg.mma.q_step = m.value("q_step", cfg.mma.q_step);
      cfg.mma.q_step_interval = m.value("q_step_interval", cfg.mma.q_step_interval);
      cfg.mma.q_max = m.value("q_max", cfg.mma.q_max);
      cfg.mma.q_bar = m.value("q_bar", cfg.mma.q_bar);
      cfg.mma.move_limit = m.value("move_limit", cfg.mma.move_limit);
      cfg.mma.max_iterations = m.value("max_iterations", cfg.mma.max_iterations);
      cfg.mma.step_tolerance = m.value("step_tolerance", cfg.mma.step_tolerance);
      cfg.mma.initial_density = m.value("initial_density", cfg.mma.initial_density);
      cfg.mma.validate();
    }
    if (doc.contains("ga")) {
      const json& g = doc.at("ga");
      cfg.ga.population = g.value("population", cfg.ga.population);
      cfg.ga.stall_generations = g.value("stall_generations", cfg.ga.stall_generations);
      cfg.ga.function_tolerance = g.value("function_tolerance", cfg.ga.function_tolerance);
      cfg.ga.max_generations = g.value("max_generations", cfg.ga.max_generations);
      cfg.ga.validate();
    }

    cfg.output_dir = doc.value("output_dir", std::string("out"));
    cfg.seed = doc.value("seed", std::uint64_t{1});
    cfg.ga.seed = cfg.seed;
    return cfg;
  } catch (const json::exception& e) {
    throw std::runtime_error("config: invalid document " + path + ": " + e.what());
  }
}

std::string config_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::uint64_t h = 1469598103934665603ull;
  char ch;
  while (in.get(ch)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace wf
