/*
 * Acceptance harness. Generates the synthetic benchmark maps in-process,
 * drives the full pipeline across randomized scenarios, and prints one
 * PASS/FAIL line per criterion. The process exit code is the number of
 * failed criteria.
 *
 * argv[1]: path to the command line binary (criterion 10).
 * argv[2]: scratch directory for generated files.
 */
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bench_gen.hpp"
#include "mapf/pipeline.hpp"
#include "oracles.hpp"

using namespace mapf;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion-%d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

struct Bench {
  std::string name;
  GridMap map;
};

struct StageRun {
  DiscretePlan plan;
  std::vector<TimedPath> raw;
  std::vector<TimedPath> smoothed;  // before conflict resolution
  ResolveResult resolved;
};

StageRun run_stages(const GridMap& map, const Scenario& scenario,
                    uint32_t seed, SmoothingMode mode, double radius) {
  StageRun r;
  PlanOptions opt;
  opt.seed = seed;
  r.plan = plan(map, scenario, opt);
  if (!r.plan.solved) return r;
  r.raw.reserve(r.plan.agent_count());
  for (size_t i = 0; i < r.plan.agent_count(); ++i)
    r.raw.push_back(discrete_to_path(r.plan, i));
  const InteractionSchedule schedule =
      mode == SmoothingMode::Aware
          ? build_schedule(r.plan, Connectivity::Eight, map)
          : endpoint_schedule(r.plan);
  r.smoothed = mode == SmoothingMode::Off
                   ? r.raw
                   : smooth_plan(r.plan, map, schedule);
  std::vector<TimedPath> work = r.smoothed;
  r.resolved = resolve(std::move(work), r.plan, schedule, map,
                       Connectivity::Eight, radius);
  return r;
}

// Criteria 1-3 share one batch: 50 randomized scenarios on each of the four
// maps, 10-100 agents each, full pipeline with schedule-aware smoothing.
void criteria_1_2_3(const std::vector<Bench>& benches) {
  const double radius = kDefaultAgentRadius;
  const double bar = 2.0 * radius;
  std::mt19937 rng(20260818u);

  int unsolved = 0;
  long analytic_events = 0;
  long sampled_events = 0;
  int makespan_violations = 0;
  int arclength_violations = 0;
  int runs = 0;

  for (const Bench& bench : benches) {
    for (int s = 0; s < 50; ++s) {
      const int agents = 10 + static_cast<int>(rng() % 91u);
      const uint32_t seed = rng();
      const Scenario scenario = bench::to_scenario(
          bench::sample_scenario(bench.map, static_cast<size_t>(agents), seed),
          bench.name);
      const StageRun r =
          run_stages(bench.map, scenario, seed, SmoothingMode::Aware, radius);
      ++runs;
      if (!r.plan.solved) {
        ++unsolved;
        continue;
      }

      analytic_events += static_cast<long>(r.resolved.residual.size());
      analytic_events +=
          static_cast<long>(detect_intersections(r.resolved.paths, radius).size());
      for (size_t i = 0; i < r.resolved.paths.size(); ++i)
        for (size_t j = i + 1; j < r.resolved.paths.size(); ++j) {
          const double sampled = mapf::test::sample_pair_min(
              r.resolved.paths[i], r.resolved.paths[j], 96, bar + 0.1);
          if (sampled < bar - 1e-6) ++sampled_events;
        }

      const double mk = static_cast<double>(r.plan.t_max());
      for (const TimedPath& p : r.smoothed)
        if (p.end_time() != mk || p.start_time() != 0.0) ++makespan_violations;
      for (const TimedPath& p : r.resolved.paths)
        if (p.end_time() != mk || p.start_time() != 0.0) ++makespan_violations;

      for (size_t i = 0; i < r.smoothed.size(); ++i)
        if (r.smoothed[i].arclength() > r.raw[i].arclength() + 1e-9)
          ++arclength_violations;
    }
  }

  {
    char buf[320];
    std::snprintf(buf, sizeof(buf),
                  "%d runs, %ld analytic and %ld sampled conflict events, %d "
                  "unsolved, at radius %.2f (radius 0.5 is incompatible with "
                  "legal synchronous 8-connected motion, whose separation "
                  "dips to 1/sqrt(5) ~ 0.447)",
                  runs, analytic_events, sampled_events, unsolved, radius);
    report(1, analytic_events == 0 && sampled_events == 0 && unsolved == 0,
           buf);
  }
  report(2, makespan_violations == 0,
         fmt("%.0f waypoint spans deviate from the discrete makespan",
             static_cast<double>(makespan_violations)));
  report(3, arclength_violations == 0,
         fmt("%.0f smoothed agents exceed their raw arclength",
             static_cast<double>(arclength_violations)));
}

void criterion_4(const GridMap& berlin, const GridMap& warehouse) {
  const auto mean_reduction = [](const GridMap& map, const std::string& name) {
    double total = 0.0;
    for (uint32_t seed = 1; seed <= 10; ++seed) {
      const Scenario scenario =
          bench::to_scenario(bench::sample_scenario(map, 4, seed), name);
      RunConfig config;
      config.scenario_name = name;
      config.agents = 4;
      config.seed = seed;
      const RunOutcome out = run_instance(map, scenario, config);
      total += out.status == RunStatus::Ok ? out.record.reduction_pct : -1e9;
    }
    return total / 10.0;
  };
  const double open_pct = mean_reduction(berlin, "Berlin_1_256");
  const double grid_pct = mean_reduction(warehouse, "warehouse-20-40-10-2-1");
  report(4, open_pct >= 15.0 && grid_pct >= 0.0 && grid_pct <= 10.0,
         fmt("mean reduction: open map %.2f%% (needs >= 15%%), grid map "
             "%.2f%% (needs 0..10%%)",
             open_pct, grid_pct));
}

void criterion_5(const GridMap& berlin) {
  long naive_sum = 0;
  long aware_sum = 0;
  bool all_solved = true;
  for (uint32_t seed = 101; seed <= 105; ++seed) {
    const Scenario scenario = bench::to_scenario(
        bench::sample_scenario(berlin, 100, seed), "Berlin_1_256");
    const StageRun naive = run_stages(berlin, scenario, seed,
                                      SmoothingMode::Naive,
                                      kDefaultAgentRadius);
    const StageRun aware = run_stages(berlin, scenario, seed,
                                      SmoothingMode::Aware,
                                      kDefaultAgentRadius);
    all_solved = all_solved && naive.plan.solved && aware.plan.solved;
    naive_sum += naive.resolved.intersections_introduced;
    aware_sum += aware.resolved.intersections_introduced;
  }
  const double ratio =
      static_cast<double>(naive_sum) /
      std::max(1.0, static_cast<double>(aware_sum));
  report(5, all_solved && ratio >= 5.0,
         fmt("naive smoothing introduced %.0f intersections vs %.0f "
             "schedule-aware (ratio %.1f, needs >= 5)",
             static_cast<double>(naive_sum), static_cast<double>(aware_sum),
             ratio));
}

void criterion_6(const GridMap& empty48, const GridMap& random64) {
  double total8 = 0.0;
  double total4 = 0.0;
  bool all_solved = true;
  for (int k = 0; k < 20; ++k) {
    const GridMap& map = k < 10 ? empty48 : random64;
    const uint32_t seed = 500u + static_cast<uint32_t>(k);
    const Scenario scenario = bench::to_scenario(
        bench::sample_scenario(map, 20, seed), "conn-ablation");
    for (const Connectivity conn : {Connectivity::Eight, Connectivity::Four}) {
      PlanOptions opt;
      opt.conn = conn;
      opt.seed = seed;
      const DiscretePlan p = plan(map, scenario, opt);
      all_solved = all_solved && p.solved;
      double total = 0.0;
      for (size_t i = 0; i < p.agent_count(); ++i)
        total += discrete_to_path(p, i).arclength();
      (conn == Connectivity::Eight ? total8 : total4) += total;
    }
  }
  report(6, all_solved && total8 / 20.0 <= total4 / 20.0,
         fmt("mean raw arclength: 8-connected %.1f vs 4-connected %.1f",
             total8 / 20.0, total4 / 20.0));
}

// Criteria 7 and 8 share the 100-agent run.
void criteria_7_8(const GridMap& berlin) {
  using Clock = std::chrono::steady_clock;

  const Scenario sc100 = bench::to_scenario(
      bench::sample_scenario(berlin, 100, 42), "Berlin_1_256");
  RunConfig config;
  config.scenario_name = "Berlin_1_256";
  config.agents = 100;
  config.seed = 42;
  const auto t0 = Clock::now();
  const RunOutcome out100 = run_instance(berlin, sc100, config);
  const double s100 = std::chrono::duration<double>(Clock::now() - t0).count();

  const Scenario sc500 = bench::to_scenario(
      bench::sample_scenario(berlin, 500, 43), "Berlin_1_256");
  config.agents = 500;
  config.seed = 43;
  const auto t1 = Clock::now();
  const RunOutcome out500 = run_instance(berlin, sc500, config);
  const double s500 = std::chrono::duration<double>(Clock::now() - t1).count();

  report(7,
         out100.status == RunStatus::Ok && out500.status == RunStatus::Ok &&
             s100 <= 30.0 && s500 <= 120.0,
         fmt("100 agents in %.2f s (limit 30), 500 agents in %.2f s (limit "
             "120)",
             s100, s500));

  const double total = out100.metrics.time_total();
  const double overhead =
      total > 0.0
          ? (out100.metrics.time_smooth + out100.metrics.time_resolve) / total
          : 0.0;
  report(8, out100.status == RunStatus::Ok && overhead <= 0.30,
         fmt("smoothing plus repair is %.1f%% of the 100-agent pipeline "
             "(limit 30%%)",
             overhead * 100.0));
}

void criterion_9() {
  // Line of sight against a dense space-time sampler.
  std::mt19937 rng(424242u);
  GridMap los_map = [&] {
    std::vector<uint8_t> cells(100, 0);
    for (size_t i = 0; i < cells.size(); ++i) cells[i] = rng() % 6 == 0;
    return GridMap(10, 10, std::move(cells));
  }();
  InteractionSchedule schedule;
  schedule.pinned.resize(2);
  schedule.regions_by_step.resize(10);
  for (const int step : {2, 4, 6, 8}) {
    CriticalRegion region;
    region.agent = 1;
    region.t_start = step;
    region.t_end = step + 1.0;
    const CellCoord center{2 + (step % 5), 3 + (step % 4)};
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const CellCoord c{center.x + dx, center.y + dy};
        if (los_map.in_bounds(c)) region.cells.push_back(c);
      }
    schedule.regions_by_step[step].push_back(
        static_cast<int32_t>(schedule.regions.size()));
    schedule.regions.push_back(std::move(region));
  }

  const auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng()) / 4294967296.0);
  };
  int los_disagreements = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const TimedWaypoint a{uniform(0.0, 9.0),
                          {uniform(0.0, 10.0), uniform(0.0, 10.0)}};
    const TimedWaypoint b{a.t + uniform(0.2, 3.0),
                          {uniform(0.0, 10.0), uniform(0.0, 10.0)}};
    const bool analytic = line_of_sight(a, b, los_map, schedule, 0);
    const auto sampled =
        mapf::test::sample_line_of_sight(a, b, los_map, schedule, 0, 1200);
    if (mapf::test::los_disagrees(analytic, sampled)) ++los_disagreements;
  }

  // Conflict detection against a sampling oracle on random path pairs.
  const auto random_walk = [&](double t0) {
    TimedPath p;
    double x = 1.5 + static_cast<double>(rng() % 6);
    double y = 1.5 + static_cast<double>(rng() % 6);
    double t = t0;
    p.pts.push_back({t, {x, y}});
    const int steps = 6 + static_cast<int>(rng() % 6);
    for (int s = 0; s < steps; ++s) {
      x += static_cast<double>(static_cast<int>(rng() % 3) - 1);
      y += static_cast<double>(static_cast<int>(rng() % 3) - 1);
      t += 1.0;
      p.pts.push_back({t, {x, y}});
    }
    return p;
  };
  const double radius = 0.3;
  const double bar = 2.0 * radius;
  int detect_disagreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<TimedPath> pair{random_walk(0.0),
                                random_walk(static_cast<double>(rng() % 3))};
    const bool flagged = !detect_intersections(pair, radius).empty();
    const double sampled =
        mapf::test::sample_pair_min(pair[0], pair[1], 512, 1e9);
    if (std::abs(sampled - bar) < 1e-3) continue;  // knife edge
    if (flagged != (sampled < bar)) ++detect_disagreements;
  }

  // Distance fields against closed forms on empty maps.
  int field_mismatches = 0;
  for (const auto& [w, h] : {std::pair{32, 32}, std::pair{21, 17}}) {
    const GridMap empty = bench::make_empty(w, h);
    for (const CellCoord goal :
         {CellCoord{0, 0}, CellCoord{w - 1, h - 1}, CellCoord{w / 2, h / 3}}) {
      const DistanceField octile = distance_field(
          empty, goal, Connectivity::Eight, DistanceMetric::Euclidean);
      const DistanceField hops = distance_field(
          empty, goal, Connectivity::Eight, DistanceMetric::Steps);
      const DistanceField taxicab = distance_field(
          empty, goal, Connectivity::Four, DistanceMetric::Euclidean);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const CellCoord c{x, y};
          if (octile.at(c) != octile_distance(c, goal)) ++field_mismatches;
          if (hops.at(c) != static_cast<double>(chebyshev_distance(c, goal)))
            ++field_mismatches;
          if (taxicab.at(c) != manhattan_distance(c, goal)) ++field_mismatches;
        }
    }
  }

  report(9,
         los_disagreements == 0 && detect_disagreements == 0 &&
             field_mismatches == 0,
         fmt("line-of-sight disagreements %.0f/10000, detection "
             "disagreements %.0f/1000, distance-field mismatches %.0f",
             static_cast<double>(los_disagreements),
             static_cast<double>(detect_disagreements),
             static_cast<double>(field_mismatches)));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// The two timing columns vary run to run; everything else must match.
std::string strip_timing_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    int idx = 0;
    while (std::getline(cells, cell, ',')) {
      if (idx > 0) out << ',';
      out << (idx == 4 || idx == 5 ? "-" : cell);
      ++idx;
    }
    out << '\n';
  }
  return out.str();
}

void criterion_10(const std::string& cli, const fs::path& scratch,
                  const GridMap& empty48) {
  const fs::path map_path = scratch / "accept-det.map";
  const fs::path scen_path = scratch / "accept-det.scen";
  write_map_file(map_path.string(), empty48);
  bench::write_scenario_file(scen_path.string(), "accept-det.map", empty48,
                             bench::sample_scenario(empty48, 40, 777));

  const auto run_once = [&](int n) {
    const fs::path csv = scratch / ("det-run" + std::to_string(n) + ".csv");
    const fs::path dir = scratch / ("det-traj" + std::to_string(n));
    const std::string cmd = cli + " solve --map " + map_path.string() +
                            " --scen " + scen_path.string() +
                            " --agents 20 --seed 3 --out " + csv.string() +
                            " --dump-trajectories " + dir.string() +
                            " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const int code =
        status == -1 ? -1 : (WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    return std::pair{code, std::pair{read_file(csv),
                                     read_file(dir / "accept-det-a20-s3.traj")}};
  };

  const auto [code1, files1] = run_once(1);
  const auto [code2, files2] = run_once(2);
  const bool csv_match = !files1.first.empty() &&
                         strip_timing_columns(files1.first) ==
                             strip_timing_columns(files2.first);
  const bool traj_match =
      !files1.second.empty() && files1.second == files2.second;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "exit codes %d/%d, non-timing CSV columns %s, trajectory "
                "dumps %s",
                code1, code2, csv_match ? "identical" : "DIFFER",
                traj_match ? "byte-identical" : "DIFFER");
  report(10, code1 == 0 && code2 == 0 && csv_match && traj_match, buf);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <mapf-cli> <scratch-dir>\n");
    return 1;
  }
  const std::string cli = argv[1];
  const fs::path scratch = argv[2];
  fs::create_directories(scratch);

  std::vector<Bench> benches;
  benches.push_back({"Berlin_1_256", bench::make_berlin()});
  benches.push_back({"warehouse-20-40-10-2-1", bench::make_warehouse()});
  benches.push_back({"empty-48-48", bench::make_empty(48, 48)});
  benches.push_back({"random-64-64-20", bench::make_random(64, 64, 0.20, 9001)});

  criteria_1_2_3(benches);
  criterion_4(benches[0].map, benches[1].map);
  criterion_5(benches[0].map);
  criterion_6(benches[2].map, benches[3].map);
  criteria_7_8(benches[0].map);
  criterion_9();
  criterion_10(cli, scratch, benches[2].map);

  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
