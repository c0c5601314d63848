#include "mapf/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "mapf/interaction.hpp"

namespace mapf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

std::string derive_name(const RunConfig& config) {
  if (!config.scenario_name.empty()) return config.scenario_name;
  return std::filesystem::path(config.scen_path).stem().string();
}

}  // namespace

RunOutcome run_instance(const GridMap& map, const Scenario& scenario,
                        const RunConfig& config) {
  RunOutcome out;
  out.record.scenario = derive_name(config);
  out.record.agents = static_cast<int>(scenario.agent_count());
  out.record.connectivity = config.conn;
  out.record.seed = config.seed;

  PlanOptions options;
  options.conn = config.conn;
  options.ordering = config.ordering;
  options.allow_corner_cutting = config.allow_corner_cutting;
  options.horizon = config.horizon;
  options.seed = config.seed;

  const auto t0 = Clock::now();
  try {
    out.plan = plan(map, scenario, options);
  } catch (const ValidationError& e) {
    out.status = RunStatus::ParseError;
    out.record.status = out.status;
    out.error = e.what();
    return out;
  }
  const auto t_planned = Clock::now();
  out.metrics.time_pibt = seconds_between(t0, t_planned);
  out.metrics.makespan = out.plan.t_max();

  std::vector<TimedPath> raw;
  raw.reserve(out.plan.agent_count());
  for (size_t i = 0; i < out.plan.agent_count(); ++i)
    raw.push_back(discrete_to_path(out.plan, i));
  const double arclength_raw = total_arclength(raw);

  const auto finish = [&](RunStatus status) {
    out.status = status;
    out.metrics.arclength_per_agent.clear();
    out.metrics.arclength_per_agent.reserve(out.paths.size());
    for (const TimedPath& p : out.paths)
      out.metrics.arclength_per_agent.push_back(p.arclength());
    out.metrics.arclength_total = total_arclength(out.paths);
    out.metrics.reduction_pct =
        arclength_raw > 0.0
            ? reduction(arclength_raw, out.metrics.arclength_total)
            : 0.0;

    out.record.status = status;
    out.record.pibt_time_s = out.metrics.time_pibt;
    out.record.total_time_s = out.metrics.time_total();
    out.record.arclength_raw = arclength_raw;
    out.record.arclength_smoothed = out.metrics.arclength_total;
    out.record.reduction_pct = out.metrics.reduction_pct;
    out.record.makespan = out.metrics.makespan;
    out.record.intersections_introduced = out.metrics.intersections_introduced;
    out.record.intersections_resolved = out.metrics.intersections_resolved;
  };

  if (!out.plan.solved) {
    out.paths = std::move(raw);
    finish(RunStatus::Unsolved);
    return out;
  }

  ScheduleOptions sched_options;
  sched_options.pin_radius_hops = config.pin_radius_hops;
  const InteractionSchedule schedule =
      config.smoothing == SmoothingMode::Aware
          ? build_schedule(out.plan, config.conn, map, sched_options)
          : endpoint_schedule(out.plan);

  std::vector<TimedPath> smoothed =
      config.smoothing == SmoothingMode::Off
          ? raw
          : smooth_plan(out.plan, map, schedule);
  const auto t_smoothed = Clock::now();
  out.metrics.time_smooth = seconds_between(t_planned, t_smoothed);

  ResolveResult resolved =
      resolve(std::move(smoothed), out.plan, schedule, map, config.conn,
              config.radius, config.allow_corner_cutting);
  out.metrics.time_resolve = seconds_between(t_smoothed, Clock::now());

  out.paths = std::move(resolved.paths);
  out.metrics.intersections_introduced = resolved.intersections_introduced;
  out.metrics.intersections_resolved = resolved.intersections_resolved;
  finish(resolved.residual.empty() ? RunStatus::Ok : RunStatus::Collision);
  return out;
}

RunOutcome run(const RunConfig& config) {
  RunOutcome out;
  out.record.scenario = derive_name(config);
  out.record.agents = config.agents;
  out.record.connectivity = config.conn;
  out.record.seed = config.seed;
  try {
    const GridMap map = parse_map_file(config.map_path);
    const Scenario scenario = parse_scenario_file(
        config.scen_path, map, static_cast<size_t>(config.agents));
    return run_instance(map, scenario, config);
  } catch (const std::runtime_error& e) {
    out.status = RunStatus::ParseError;
    out.record.status = out.status;
    out.error = e.what();
    return out;
  }
}

std::vector<RunRecord> sweep(const RunConfig& base,
                             const std::vector<int>& agent_counts,
                             const std::vector<uint32_t>& seeds) {
  std::vector<RunRecord> records;
  records.reserve(agent_counts.size() * seeds.size());
  for (const int agents : agent_counts) {
    for (const uint32_t seed : seeds) {
      RunConfig config = base;
      config.agents = agents;
      config.seed = seed;
      records.push_back(run(config).record);
    }
  }
  return records;
}

void write_trajectories(std::ostream& out,
                        const std::vector<TimedPath>& paths) {
  char buf[96];
  for (size_t i = 0; i < paths.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "agent %zu\n", i);
    out << buf;
    for (const TimedWaypoint& w : paths[i].pts) {
      std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f\n", w.t, w.p.x, w.p.y);
      out << buf;
    }
  }
}

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::Ok:
      return 0;
    case RunStatus::ParseError:
      return 2;
    case RunStatus::Unsolved:
      return 3;
    case RunStatus::Collision:
      return 4;
  }
  return 1;
}

}  // namespace mapf
