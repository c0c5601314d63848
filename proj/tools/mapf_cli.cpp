// Command-line front end: solve one instance or sweep a list of runs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mapf/pipeline.hpp"

namespace {

using namespace mapf;

struct CommonFlags {
  RunConfig config;
  std::string smoothing = "aware";
  std::string ordering = "steps";
  int conn = 8;
};

void add_run_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--conn", f.conn, "connectivity (4 or 8)")
      ->check(CLI::IsMember({4, 8}))
      ->capture_default_str();
  cmd->add_option("--seed", f.config.seed, "planner seed")
      ->capture_default_str();
  cmd->add_option("--smoothing", f.smoothing, "off|naive|aware")
      ->check(CLI::IsMember({"off", "naive", "aware"}))
      ->capture_default_str();
  cmd->add_option("--radius", f.config.radius, "agent radius in cells")
      ->capture_default_str();
  cmd->add_option("--horizon", f.config.horizon,
                  "timestep limit (0 = automatic)")
      ->capture_default_str();
  cmd->add_option("--ordering", f.ordering,
                  "candidate ordering cost model: steps|euclidean")
      ->check(CLI::IsMember({"steps", "euclidean"}))
      ->capture_default_str();
  cmd->add_flag("--corner-cutting", f.config.allow_corner_cutting,
                "allow diagonal moves past blocked corners");
  cmd->add_option("--pin-radius", f.config.pin_radius_hops,
                  "interaction pin distance in hops")
      ->capture_default_str();
}

RunConfig materialize(const CommonFlags& f) {
  RunConfig c = f.config;
  c.conn = f.conn == 4 ? Connectivity::Four : Connectivity::Eight;
  c.smoothing = f.smoothing == "off"     ? SmoothingMode::Off
                : f.smoothing == "naive" ? SmoothingMode::Naive
                                         : SmoothingMode::Aware;
  c.ordering = f.ordering == "euclidean" ? DistanceMetric::Euclidean
                                         : DistanceMetric::Steps;
  return c;
}

bool parse_sweep_line(const std::string& line, int line_no, RunConfig& config,
                      std::string& error) {
  CommonFlags f;
  std::istringstream in(line);
  std::string token;
  bool have_map = false, have_scen = false, have_agents = false;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      error = "line " + std::to_string(line_no) + ": expected key=value, got '" +
              token + "'";
      return false;
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    try {
      if (key == "map") {
        f.config.map_path = value;
        have_map = true;
      } else if (key == "scen") {
        f.config.scen_path = value;
        have_scen = true;
      } else if (key == "agents") {
        f.config.agents = std::stoi(value);
        have_agents = true;
      } else if (key == "conn") {
        f.conn = std::stoi(value);
        if (f.conn != 4 && f.conn != 8) throw std::invalid_argument(value);
      } else if (key == "seed") {
        f.config.seed = static_cast<uint32_t>(std::stoul(value));
      } else if (key == "smoothing") {
        if (value != "off" && value != "naive" && value != "aware")
          throw std::invalid_argument(value);
        f.smoothing = value;
      } else if (key == "radius") {
        f.config.radius = std::stod(value);
      } else if (key == "horizon") {
        f.config.horizon = std::stoi(value);
      } else if (key == "ordering") {
        if (value != "steps" && value != "euclidean")
          throw std::invalid_argument(value);
        f.ordering = value;
      } else if (key == "corner_cutting") {
        f.config.allow_corner_cutting = value == "1" || value == "true";
      } else if (key == "pin_radius") {
        f.config.pin_radius_hops = std::stoi(value);
      } else if (key == "name") {
        f.config.scenario_name = value;
      } else {
        error = "line " + std::to_string(line_no) + ": unknown key '" + key +
                "'";
        return false;
      }
    } catch (const std::exception&) {
      error = "line " + std::to_string(line_no) + ": bad value for '" + key +
              "': '" + value + "'";
      return false;
    }
  }
  if (!have_map || !have_scen || !have_agents) {
    error = "line " + std::to_string(line_no) +
            ": map=, scen= and agents= are required";
    return false;
  }
  config = materialize(f);
  return true;
}

void print_summary(const RunOutcome& outcome) {
  const RunRecord& r = outcome.record;
  std::printf("status=%s\n", run_status_name(r.status));
  std::printf("scenario=%s\n", r.scenario.c_str());
  std::printf("agents=%d\n", r.agents);
  std::printf("connectivity=%d\n", static_cast<int>(r.connectivity));
  std::printf("seed=%u\n", r.seed);
  std::printf("pibt_time_s=%.6f\n", r.pibt_time_s);
  std::printf("total_time_s=%.6f\n", r.total_time_s);
  std::printf("arclength_raw=%.6f\n", r.arclength_raw);
  std::printf("arclength_smoothed=%.6f\n", r.arclength_smoothed);
  std::printf("reduction_pct=%.6f\n", r.reduction_pct);
  std::printf("makespan=%d\n", r.makespan);
  std::printf("intersections_introduced=%d\n", r.intersections_introduced);
  std::printf("intersections_resolved=%d\n", r.intersections_resolved);
}

int do_solve(const CommonFlags& flags, const std::string& out_csv,
             const std::string& dump_dir) {
  const RunConfig config = materialize(flags);
  const RunOutcome outcome = run(config);
  if (!outcome.error.empty())
    std::fprintf(stderr, "error: %s\n", outcome.error.c_str());
  print_summary(outcome);

  if (!out_csv.empty()) write_results_file(out_csv, {outcome.record});
  if (!dump_dir.empty() && outcome.status != RunStatus::ParseError) {
    std::filesystem::create_directories(dump_dir);
    char name[128];
    std::snprintf(name, sizeof(name), "%s-a%d-s%u.traj",
                  outcome.record.scenario.c_str(), outcome.record.agents,
                  outcome.record.seed);
    std::ofstream out(std::filesystem::path(dump_dir) / name);
    if (!out) {
      std::fprintf(stderr, "error: cannot write trajectory dump\n");
      return 2;
    }
    write_trajectories(out, outcome.paths);
  }
  return exit_code(outcome.status);
}

int do_sweep(const std::string& spec_path, const std::string& out_csv) {
  std::ifstream in(spec_path);
  if (!in) {
    std::fprintf(stderr, "error: cannot read %s\n", spec_path.c_str());
    return 2;
  }
  std::vector<RunConfig> configs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    RunConfig config;
    std::string error;
    if (!parse_sweep_line(line, line_no, config, error)) {
      std::fprintf(stderr, "error: %s: %s\n", spec_path.c_str(),
                   error.c_str());
      return 2;
    }
    configs.push_back(std::move(config));
  }

  std::vector<RunRecord> records;
  records.reserve(configs.size());
  for (const RunConfig& config : configs) {
    const RunOutcome outcome = run(config);
    if (!outcome.error.empty())
      std::fprintf(stderr, "error: %s\n", outcome.error.c_str());
    records.push_back(outcome.record);
  }

  if (out_csv.empty()) {
    std::ostringstream buf;
    write_results(buf, records);
    std::fputs(buf.str().c_str(), stdout);
  } else {
    write_results_file(out_csv, records);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-agent grid planner: PiBT, string-pull smoothing, SIPP "
               "repair"};
  app.require_subcommand(1);

  CommonFlags solve_flags;
  std::string solve_out, dump_dir;
  CLI::App* solve = app.add_subcommand("solve", "run one instance");
  solve->add_option("--map", solve_flags.config.map_path, "MovingAI .map file")
      ->required();
  solve->add_option("--scen", solve_flags.config.scen_path,
                    "MovingAI .scen file")
      ->required();
  solve->add_option("--agents", solve_flags.config.agents,
                    "number of agents (first K scenario rows)")
      ->required()
      ->check(CLI::PositiveNumber);
  add_run_flags(solve, solve_flags);
  solve->add_option("--out", solve_out, "write a results CSV here");
  solve->add_option("--dump-trajectories", dump_dir,
                    "write a per-run trajectory dump into this directory");

  std::string sweep_spec, sweep_out;
  CLI::App* sweep = app.add_subcommand("sweep", "run every line of a spec file");
  sweep->add_option("--spec", sweep_spec,
                    "file with one run per line: key=value tokens (map=, "
                    "scen=, agents= required; conn=, seed=, smoothing=, "
                    "radius=, horizon=, ordering=, corner_cutting=, "
                    "pin_radius=, name= optional)")
      ->required();
  sweep->add_option("--out", sweep_out, "write the results CSV here "
                                        "(default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return do_solve(solve_flags, solve_out, dump_dir);
  return do_sweep(sweep_spec, sweep_out);
}
