#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <unordered_map>

namespace mapf::test {

namespace {

// Distance from p to the closed unit square of cell c; zero inside.
double dist_to_square(Point p, CellCoord c) {
  const double dx = std::max({static_cast<double>(c.x) - p.x,
                              p.x - (static_cast<double>(c.x) + 1.0), 0.0});
  const double dy = std::max({static_cast<double>(c.y) - p.y,
                              p.y - (static_cast<double>(c.y) + 1.0), 0.0});
  return std::hypot(dx, dy);
}

// Depth of p inside the closed unit square of cell c; zero on the boundary,
// negative outside.
double depth_in_square(Point p, CellCoord c) {
  const double left = p.x - static_cast<double>(c.x);
  const double right = static_cast<double>(c.x) + 1.0 - p.x;
  const double bottom = p.y - static_cast<double>(c.y);
  const double top = static_cast<double>(c.y) + 1.0 - p.y;
  return std::min({left, right, bottom, top});
}

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

LosSampleResult sample_line_of_sight(const TimedWaypoint& a,
                                     const TimedWaypoint& b,
                                     const GridMap& map,
                                     const InteractionSchedule& schedule,
                                     int self_agent, int samples) {
  LosSampleResult r;
  const double seg_len = dist(a.p, b.p);
  const double dt_total = b.t - a.t;
  const double space_tol = 2.0 * seg_len / samples + 1e-9;
  const double time_tol = 2.0 * std::abs(dt_total) / samples + 1e-9;

  for (int k = 0; k <= samples; ++k) {
    const double u = static_cast<double>(k) / samples;
    const Point p{a.p.x + (b.p.x - a.p.x) * u, a.p.y + (b.p.y - a.p.y) * u};
    const double t = a.t + dt_total * u;

    const int cx = static_cast<int>(std::floor(p.x));
    const int cy = static_cast<int>(std::floor(p.y));
    for (int oy = -1; oy <= 1; ++oy)
      for (int ox = -1; ox <= 1; ++ox) {
        const CellCoord c{cx + ox, cy + oy};
        if (map.passable(c)) continue;
        const double d = dist_to_square(p, c);
        if (d <= 1e-12) {
          r.clear = false;
          if (depth_in_square(p, c) > space_tol) r.grazing_only = false;
        } else if (d <= space_tol) {
          r.near_miss = true;
        }
      }

    for (const CriticalRegion& reg : schedule.regions) {
      if (reg.agent == self_agent) continue;
      if (t < reg.t_start - time_tol || t > reg.t_end + time_tol) continue;
      const bool in_time = t >= reg.t_start && t <= reg.t_end;
      const double time_depth = std::min(t - reg.t_start, reg.t_end - t);
      for (const CellCoord c : reg.cells) {
        const double d = dist_to_square(p, c);
        if (d <= 1e-12 && in_time) {
          r.clear = false;
          if (depth_in_square(p, c) > space_tol && time_depth > time_tol)
            r.grazing_only = false;
        } else if (d <= space_tol) {
          r.near_miss = true;
        }
      }
    }
  }
  return r;
}

bool los_disagrees(bool analytic_clear, const LosSampleResult& sampled) {
  if (analytic_clear && !sampled.clear && !sampled.grazing_only) return true;
  if (!analytic_clear && sampled.clear && !sampled.near_miss) return true;
  return false;
}

double sample_pair_min(const TimedPath& pa, const TimedPath& pb,
                       int samples_per_window, double prune_above) {
  if (pa.pts.empty() || pb.pts.empty())
    return std::numeric_limits<double>::infinity();

  const double t0 = std::min(pa.start_time(), pb.start_time());
  const double t1 = std::max(pa.end_time(), pb.end_time());
  if (!(t1 > t0)) return dist(pa.position_at(t0), pb.position_at(t0));

  // The pruning bound requires bounded speeds.
  const auto speed_ok = [](const TimedPath& p) {
    for (size_t i = 0; i + 1 < p.pts.size(); ++i) {
      const double dt = p.pts[i + 1].t - p.pts[i].t;
      const double dl = dist(p.pts[i + 1].p, p.pts[i].p);
      if (dl > (1.4142135623730951 + 1e-9) * std::max(dt, 0.0) + 1e-12)
        return false;
    }
    return true;
  };
  const bool can_prune = speed_ok(pa) && speed_ok(pb);

  // Breakpoints: both waypoint grids plus the unit grid.
  std::vector<double> breaks{t0, t1};
  for (const auto& wp : pa.pts)
    if (wp.t > t0 && wp.t < t1) breaks.push_back(wp.t);
  for (const auto& wp : pb.pts)
    if (wp.t > t0 && wp.t < t1) breaks.push_back(wp.t);
  for (double t = std::ceil(t0); t < t1; t += 1.0)
    if (t > t0) breaks.push_back(t);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double best = std::numeric_limits<double>::infinity();
  for (size_t w = 0; w + 1 < breaks.size(); ++w) {
    const double wa = breaks[w];
    const double wb = breaks[w + 1];
    const double d0 = dist(pa.position_at(wa), pb.position_at(wa));
    const double d1 = dist(pa.position_at(wb), pb.position_at(wb));
    best = std::min({best, d0, d1});
    if (can_prune) {
      const double span = wb - wa;
      const double bound = 0.5 * (d0 + d1) - 1.4142135623730951 * span;
      if (bound > prune_above) continue;
    }
    for (int k = 1; k < samples_per_window; ++k) {
      const double t =
          wa + (wb - wa) * static_cast<double>(k) / samples_per_window;
      best = std::min(best, dist(pa.position_at(t), pb.position_at(t)));
    }
  }
  return best;
}

double sample_move_min(CellCoord a_from, CellCoord a_to, CellCoord b_from,
                       CellCoord b_to, int samples) {
  const Point a0 = cell_center(a_from);
  const Point a1 = cell_center(a_to);
  const Point b0 = cell_center(b_from);
  const Point b1 = cell_center(b_to);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= samples; ++k) {
    const double u = static_cast<double>(k) / samples;
    const Point pa{a0.x + (a1.x - a0.x) * u, a0.y + (a1.y - a0.y) * u};
    const Point pb{b0.x + (b1.x - b0.x) * u, b0.y + (b1.y - b0.y) * u};
    best = std::min(best, dist(pa, pb));
  }
  return best;
}

int joint_two_agent_steps(const GridMap& map, Connectivity conn,
                          CellCoord s0, CellCoord s1, CellCoord g0,
                          CellCoord g1, int max_steps) {
  const auto pack = [&](CellCoord a, CellCoord b) {
    return (static_cast<uint64_t>(map.index(a)) << 32) |
           static_cast<uint64_t>(map.index(b));
  };
  std::unordered_map<uint64_t, int> depth;
  std::queue<std::pair<CellCoord, CellCoord>> open;
  depth[pack(s0, s1)] = 0;
  open.push({s0, s1});
  std::vector<CellCoord> n0, n1;
  while (!open.empty()) {
    const auto [c0, c1] = open.front();
    open.pop();
    const int d = depth[pack(c0, c1)];
    if (c0 == g0 && c1 == g1) return d;
    if (d >= max_steps) continue;
    neighbors_into(map, c0, conn, false, n0);
    neighbors_into(map, c1, conn, false, n1);
    for (const CellCoord m0 : n0)
      for (const CellCoord m1 : n1) {
        if (!move_valid(map, {c0, c1}, {m0, m1}, conn, false)) continue;
        const uint64_t key = pack(m0, m1);
        if (depth.count(key)) continue;
        depth[key] = d + 1;
        open.push({m0, m1});
      }
  }
  return -1;
}

}  // namespace mapf::test
