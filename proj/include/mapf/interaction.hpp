/*
 * interaction.hpp
 *
 * Where and when agents of a discrete plan come close enough that smoothing
 * must not touch their motion. Two agents interact directly at timestep t
 * when they are within two hops of each other: Chebyshev distance <= 2 under
 * 8-connectivity, Manhattan distance <= 2 under 4-connectivity.
 *
 * Both agents of an interacting pair get their timestep-t waypoints pinned,
 * and each contributes one critical region: its own cell plus the Moore
 * neighborhood, clipped to the map, active over the window [t, t+1].
 */
#pragma once

#include <cstdint>
#include <vector>

#include "mapf/pibt.hpp"

namespace mapf {

struct PinnedWaypoint {
  int t = 0;
  CellCoord cell;
};

struct CriticalRegion {
  int agent = -1;
  double t_start = 0.0;
  double t_end = 0.0;  // always t_start + 1
  std::vector<CellCoord> cells;
};

struct InteractionSchedule {
  // Per agent, strictly increasing in t; always includes the start (t = 0)
  // and the final timestep.
  std::vector<std::vector<PinnedWaypoint>> pinned;
  std::vector<CriticalRegion> regions;
  // regions_by_step[t] indexes regions whose window is [t, t+1].
  std::vector<std::vector<int32_t>> regions_by_step;

  // Consecutive pins of `agent` bracketing time t.
  std::pair<PinnedWaypoint, PinnedWaypoint> bracketing(int agent,
                                                       double t) const;
};

struct ScheduleOptions {
  // Pin distance in hops. Two hops covers every pair whose next moves can
  // approach within one cell of each other.
  int pin_radius_hops = 2;
};

bool directly_interacting(const Config& config, size_t i, size_t j,
                          Connectivity conn, int radius_hops = 2);

InteractionSchedule build_schedule(const DiscretePlan& plan, Connectivity conn,
                                   const GridMap& map,
                                   const ScheduleOptions& options = {});

// Degenerate schedule pinning only t = 0 and t_max, with no regions. The
// whole-path smoothing arm and its conflict repair use this.
InteractionSchedule endpoint_schedule(const DiscretePlan& plan);

}  // namespace mapf
