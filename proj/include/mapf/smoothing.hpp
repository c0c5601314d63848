/*
 * smoothing.hpp
 *
 * String pulling over the discrete plan, constrained by static obstacles
 * and by other agents' critical regions.
 *
 * line_of_sight fails when the chord touches any blocked closed cell square
 * (supercover traversal, corner grazing included) or when its time window
 * inside any cell of another agent's critical region overlaps that region's
 * window (closed intervals; a single shared instant counts).
 *
 * string_pull scans forward from an anchor and stops at the first failing
 * waypoint, then shortcuts to the last passing one. Retained waypoints keep
 * their original timestamps, so the speed bound of sqrt(2) cells per
 * timestep and the makespan are preserved.
 */
#pragma once

#include <vector>

#include "mapf/interaction.hpp"
#include "mapf/timed_path.hpp"

namespace mapf {

enum class SmoothingMode { Off, Naive, Aware };

// Raw conversion: one waypoint per timestep at cell centers.
TimedPath discrete_to_path(const DiscretePlan& plan, size_t agent);
TimedPath discrete_to_path(const DiscretePlan& plan, size_t agent, int t_from,
                           int t_to);

bool line_of_sight(const TimedWaypoint& a, const TimedWaypoint& b,
                   const GridMap& map, const InteractionSchedule& schedule,
                   int self_agent);

// Coarse spatial index over a schedule's critical regions. Every region is
// listed in each bucket its bounding box touches, so gathering the buckets a
// chord crosses yields a superset of the regions the chord can enter.
struct RegionIndex {
  static constexpr double kBucket = 8.0;  // cells per bucket edge
  int bw = 0;
  int bh = 0;
  std::vector<std::vector<int32_t>> buckets;
  std::vector<int> step;  // registration step of each region
  std::vector<double> xlo, ylo, xhi, yhi;
};

RegionIndex build_region_index(const InteractionSchedule& schedule,
                               const GridMap& map);

// Pulls one inter-pin segment. `segment` must hold the original per-timestep
// waypoints, endpoints included.
std::vector<TimedWaypoint> string_pull(const std::vector<TimedWaypoint>& segment,
                                       const GridMap& map,
                                       const InteractionSchedule& schedule,
                                       int self_agent);

// Full pipeline stage: build the interaction schedule (per `mode`), then
// pull every agent's inter-pin segments. Off returns raw conversions.
std::vector<TimedPath> smooth_plan(const DiscretePlan& plan,
                                   const GridMap& map, Connectivity conn,
                                   SmoothingMode mode = SmoothingMode::Aware,
                                   const ScheduleOptions& options = {});

std::vector<TimedPath> smooth_plan(const DiscretePlan& plan,
                                   const GridMap& map,
                                   const InteractionSchedule& schedule);

}  // namespace mapf
