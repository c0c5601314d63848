/*
 * conflict.hpp
 *
 * Continuous collision detection between trajectories and the repair loop.
 *
 * Agents are open discs. Two trajectories conflict at time t when their
 * separation is strictly below 2 * radius; separation exactly 2 * radius is
 * legal, which keeps adjacent-lane parallel motion valid. Detection solves
 * the per-piece quadratic closest-approach exactly.
 *
 * Repairs replan the lower-priority agent (higher index) of a conflicting
 * pair between its pinned waypoints bracketing the event, using SIPP over
 * (cell, safe interval) states with unit move duration and integer
 * departures. The replanned segment must arrive at the closing pin exactly
 * on time. When no such path exists, both agents' bracketing segments
 * revert to their original discrete sub-paths.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mapf/interaction.hpp"
#include "mapf/smoothing.hpp"
#include "mapf/timed_path.hpp"

namespace mapf {

// Default agent radius in cells. Legal synchronous 8-connected grid motion
// can bring centers as close as 1/sqrt(5) ~ 0.447, so any radius at or
// below 0.22 never flags the discrete plan's own motion.
inline constexpr double kDefaultAgentRadius = 0.2;

struct ConflictEvent {
  int a = -1;  // a < b
  int b = -1;
  double time = 0.0;
  double separation = 0.0;
};

// Minimum separation between two paths over their common span, with the
// achieving time.
std::pair<double, double> pair_min_separation(const TimedPath& pa,
                                              const TimedPath& pb);

// One event per conflicting pair at its global separation minimum, sorted
// by (time, a, b).
std::vector<ConflictEvent> detect_intersections(std::span<const TimedPath> paths,
                                                double radius);

struct SafeInterval {
  double start = 0.0;
  double end = 0.0;
};

// Maximal closed intervals within [0, horizon] during which a disc of
// `radius` resting on the center of `cell` keeps separation >= 2 * radius
// from every fixed path's moving point. Paths are stationary at their
// endpoints outside their spans.
std::vector<SafeInterval> build_safe_intervals(CellCoord cell,
                                               std::span<const TimedPath> fixed,
                                               double radius, double horizon);

/*
 * Deadline-constrained replanning of one agent between two of its pins.
 * Moves take one timestep (cardinal and diagonal alike), departures happen
 * at integer times, waiting is allowed within a safe interval, and the path
 * must sit on pin_b.cell at exactly pin_b.t. Success implies the returned
 * segment is conflict-free against every fixed path at the given radius.
 */
std::optional<TimedPath> sipp_replan(const GridMap& map, PinnedWaypoint pin_a,
                                     PinnedWaypoint pin_b,
                                     std::span<const TimedPath> fixed,
                                     Connectivity conn, double radius,
                                     bool allow_corner_cutting = false);

struct ResolveResult {
  std::vector<TimedPath> paths;
  int intersections_introduced = 0;
  int intersections_resolved = 0;
  int replanned_segments = 0;
  int reverted_segments = 0;
  std::vector<ConflictEvent> residual;
};

/*
 * Repairs `paths` until detect_intersections finds nothing, alternating
 * detection passes with per-event SIPP replans and falling back to
 * reverting both bracketing segments. The schedule must be the one whose
 * pins the smoothed paths retain. Terminates: every failed repair moves a
 * segment back to its original discrete form, and pairs that cannot change
 * further are abandoned (reported in `residual`).
 */
ResolveResult resolve(std::vector<TimedPath> paths, const DiscretePlan& original,
                      const InteractionSchedule& schedule, const GridMap& map,
                      Connectivity conn, double radius,
                      bool allow_corner_cutting = false);

}  // namespace mapf
