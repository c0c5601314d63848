/*
 * metrics.hpp
 *
 * Quantities reported per run: arclength totals, path-length reduction,
 * makespan, intersection counts, and per-stage timings.
 */
#pragma once

#include <span>
#include <vector>

#include "mapf/timed_path.hpp"

namespace mapf {

double total_arclength(std::span<const TimedPath> paths);

// Percentage reduction from `raw` to `smoothed`. Throws std::domain_error
// when raw is not positive.
double reduction(double raw, double smoothed);

// Latest final waypoint time across agents; zero for an empty set.
double makespan(std::span<const TimedPath> paths);

struct PlanMetrics {
  double arclength_total = 0.0;
  std::vector<double> arclength_per_agent;
  int makespan = 0;
  double reduction_pct = 0.0;
  int intersections_introduced = 0;
  int intersections_resolved = 0;
  double time_pibt = 0.0;    // distance fields + discrete planning
  double time_smooth = 0.0;  // schedule construction + string pulling
  double time_resolve = 0.0; // detection + repair
  double time_total() const { return time_pibt + time_smooth + time_resolve; }
};

}  // namespace mapf
