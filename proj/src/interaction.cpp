#include "mapf/interaction.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace mapf {

namespace {

void add_region(InteractionSchedule& s, const GridMap& map, int agent, int t,
                CellCoord cell) {
  CriticalRegion r;
  r.agent = agent;
  r.t_start = static_cast<double>(t);
  r.t_end = r.t_start + 1.0;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      const CellCoord c{cell.x + dx, cell.y + dy};
      if (map.in_bounds(c)) r.cells.push_back(c);
    }
  s.regions_by_step[static_cast<size_t>(t)].push_back(
      static_cast<int32_t>(s.regions.size()));
  s.regions.push_back(std::move(r));
}

}  // namespace

std::pair<PinnedWaypoint, PinnedWaypoint> InteractionSchedule::bracketing(
    int agent, double t) const {
  const auto& pins = pinned[static_cast<size_t>(agent)];
  if (pins.size() < 2)
    return {pins.front(), pins.front()};
  size_t lo = 0;
  for (size_t i = 0; i + 1 < pins.size(); ++i) {
    if (static_cast<double>(pins[i].t) <= t) lo = i;
  }
  return {pins[lo], pins[lo + 1]};
}

bool directly_interacting(const Config& config, size_t i, size_t j,
                          Connectivity conn, int radius_hops) {
  if (conn == Connectivity::Eight)
    return chebyshev_distance(config[i], config[j]) <= radius_hops;
  return std::abs(config[i].x - config[j].x) +
             std::abs(config[i].y - config[j].y) <=
         radius_hops;
}

InteractionSchedule build_schedule(const DiscretePlan& plan, Connectivity conn,
                                   const GridMap& map,
                                   const ScheduleOptions& options) {
  const size_t n = plan.agent_count();
  const int t_max = plan.t_max();
  const int radius = options.pin_radius_hops;

  InteractionSchedule s;
  s.pinned.resize(n);
  s.regions_by_step.resize(static_cast<size_t>(t_max) + 1);

  std::vector<std::vector<uint8_t>> interacting(
      n, std::vector<uint8_t>(static_cast<size_t>(t_max) + 1, 0));

  // Hops never exceed radius when cell-bucket coordinates are within one
  // bucket of each other (bucket size = radius).
  std::unordered_map<int64_t, std::vector<int32_t>> buckets;
  const auto key = [&](CellCoord c) {
    const int bx = c.x / std::max(radius, 1);
    const int by = c.y / std::max(radius, 1);
    return static_cast<int64_t>(by) * (map.width() + 2) + bx;
  };

  for (int t = 0; t <= t_max; ++t) {
    const Config& q = plan.configs[static_cast<size_t>(t)];
    buckets.clear();
    for (size_t i = 0; i < n; ++i)
      buckets[key(q[i])].push_back(static_cast<int32_t>(i));
    const int b = std::max(radius, 1);
    for (size_t i = 0; i < n; ++i) {
      const CellCoord c = q[i];
      for (int by = c.y / b - 1; by <= c.y / b + 1; ++by)
        for (int bx = c.x / b - 1; bx <= c.x / b + 1; ++bx) {
          const auto it =
              buckets.find(static_cast<int64_t>(by) * (map.width() + 2) + bx);
          if (it == buckets.end()) continue;
          for (int32_t j : it->second) {
            if (static_cast<size_t>(j) <= i) continue;
            if (directly_interacting(q, i, static_cast<size_t>(j), conn,
                                     radius)) {
              interacting[i][static_cast<size_t>(t)] = 1;
              interacting[static_cast<size_t>(j)][static_cast<size_t>(t)] = 1;
            }
          }
        }
    }
  }

  for (size_t i = 0; i < n; ++i) {
    auto& pins = s.pinned[i];
    pins.push_back({0, plan.configs[0][i]});
    for (int t = 0; t <= t_max; ++t) {
      if (!interacting[i][static_cast<size_t>(t)]) continue;
      if (pins.back().t != t)
        pins.push_back({t, plan.configs[static_cast<size_t>(t)][i]});
      add_region(s, map, static_cast<int>(i), t,
                 plan.configs[static_cast<size_t>(t)][i]);
    }
    if (pins.back().t != t_max)
      pins.push_back({t_max, plan.configs[static_cast<size_t>(t_max)][i]});
  }
  return s;
}

InteractionSchedule endpoint_schedule(const DiscretePlan& plan) {
  InteractionSchedule s;
  const size_t n = plan.agent_count();
  const int t_max = plan.t_max();
  s.pinned.resize(n);
  s.regions_by_step.resize(static_cast<size_t>(t_max) + 1);
  for (size_t i = 0; i < n; ++i) {
    s.pinned[i].push_back({0, plan.configs[0][i]});
    if (t_max > 0)
      s.pinned[i].push_back({t_max, plan.configs[static_cast<size_t>(t_max)][i]});
  }
  return s;
}

}  // namespace mapf
