/*
 * pipeline.hpp
 *
 * End-to-end runs: discrete planning, smoothing, conflict resolution, and
 * the metrics record emitted to the results CSV.
 *
 * Exit code mapping: 0 for a clean run, 2 for parse or validation
 * failures, 3 when the planner exhausts its horizon, 4 when conflict
 * resolution leaves residual intersections.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mapf/benchmark_io.hpp"
#include "mapf/conflict.hpp"
#include "mapf/metrics.hpp"
#include "mapf/pibt.hpp"
#include "mapf/smoothing.hpp"

namespace mapf {

struct RunConfig {
  std::string map_path;
  std::string scen_path;
  // CSV scenario label; empty derives the scenario file's stem.
  std::string scenario_name;
  int agents = 1;
  Connectivity conn = Connectivity::Eight;
  uint32_t seed = 0;
  SmoothingMode smoothing = SmoothingMode::Aware;
  DistanceMetric ordering = DistanceMetric::Steps;
  double radius = kDefaultAgentRadius;
  int horizon = 0;  // 0 selects the planner's automatic horizon
  bool allow_corner_cutting = false;
  int pin_radius_hops = 2;
};

struct RunOutcome {
  RunStatus status = RunStatus::Ok;
  RunRecord record;
  PlanMetrics metrics;
  DiscretePlan plan;
  std::vector<TimedPath> paths;  // final trajectories, post-resolution
  std::string error;             // populated when status is ParseError
};

// Pipeline on already-loaded inputs. pibt_time_s covers distance fields and
// discrete planning; total_time_s extends through conflict resolution. File
// IO never counts toward either.
RunOutcome run_instance(const GridMap& map, const Scenario& scenario,
                        const RunConfig& config);

// Loads map and scenario from the config paths, then runs. Parse and
// validation failures become status ParseError rather than exceptions.
RunOutcome run(const RunConfig& config);

// One run per (agent count, seed) pair, agents outermost.
std::vector<RunRecord> sweep(const RunConfig& base,
                             const std::vector<int>& agent_counts,
                             const std::vector<uint32_t>& seeds);

// Plain-text dump: per agent a line `agent <id>` followed by one
// `t x y` line per waypoint.
void write_trajectories(std::ostream& out,
                        const std::vector<TimedPath>& paths);

int exit_code(RunStatus status);

}  // namespace mapf
