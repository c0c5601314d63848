/*
 * oracles.hpp
 *
 * Reference implementations used only by the tests. Each one recomputes a
 * library answer by brute force (dense sampling, exhaustive search) so the
 * production code can be checked against an independent arithmetic path.
 */
#pragma once

#include <vector>

#include "mapf/grid.hpp"
#include "mapf/interaction.hpp"
#include "mapf/pibt.hpp"
#include "mapf/timed_path.hpp"

namespace mapf::test {

struct LosSampleResult {
  // No sample landed inside a blocked square or an active foreign region.
  bool clear = true;
  // Some sample came within the sampling tolerance of a violation without
  // triggering one. A mismatch against line_of_sight is excusable here.
  bool near_miss = false;
  // Every violating sample only grazed a boundary (spatial or temporal
  // penetration within tolerance), so a cleared verdict is also excusable.
  bool grazing_only = true;
};

// Samples the segment at `samples`+1 evenly spaced times and classifies
// each point against blocked squares and foreign critical regions, both
// treated as closed sets. Tolerances derive from the sampling resolution.
LosSampleResult sample_line_of_sight(const TimedWaypoint& a,
                                     const TimedWaypoint& b,
                                     const GridMap& map,
                                     const InteractionSchedule& schedule,
                                     int self_agent, int samples);

// True when the pair of verdicts counts as a disagreement: the analytic
// checker misses a solidly violating sample, or rejects a segment no
// sample comes close to invalidating.
bool los_disagrees(bool analytic_clear, const LosSampleResult& sampled);

// Minimum sampled distance between the two trajectories over the union of
// their spans, positions clamped outside each span. Sub-windows whose
// endpoint distances prove the minimum exceeds `prune_above` are skipped;
// the bound assumes piece speeds at most sqrt(2), which is verified and
// falls back to full sampling when violated. Pass a large prune_above to
// disable pruning.
double sample_pair_min(const TimedPath& pa, const TimedPath& pb,
                       int samples_per_window, double prune_above);

// Minimum sampled distance between two agents moving linearly from their
// `from` to their `to` cell centers over one timestep.
double sample_move_min(CellCoord a_from, CellCoord a_to, CellCoord b_from,
                       CellCoord b_to, int samples);

// Exhaustive breadth-first search over joint two-agent configurations
// using move_valid transitions. Returns the minimal number of steps until
// both agents sit on their goals, or -1 when unreachable in `max_steps`.
int joint_two_agent_steps(const GridMap& map, Connectivity conn,
                          CellCoord s0, CellCoord s1, CellCoord g0,
                          CellCoord g1, int max_steps);

}  // namespace mapf::test
