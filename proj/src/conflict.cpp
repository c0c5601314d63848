#include "mapf/conflict.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace mapf {

namespace {

constexpr double kTimeEps = 1e-9;

// Exact tangency is legal. Flagging starts this far below 2 * radius so
// rounding in the quadratic minimizer cannot flag boundary contact.
constexpr double kDetectSlack = 1e-9;

// Replanned motion must clear fixed paths by this margin beyond 2 * radius,
// which keeps spliced segments strictly inside the legal band that
// detect_intersections accepts.
constexpr double kReplanMargin = 1e-6;

// An agent covers at most sqrt(2) cells per timestep, so the relative
// closing speed of any pair is bounded by 2 * sqrt(2). Over half a window
// the separation can shrink by at most sqrt(2) below the nearer endpoint.
constexpr double kHalfWindowClosing = 1.4142135623730951;

void collect_breaks(const TimedPath& p, double w0, double w1,
                    std::vector<double>& ts) {
  auto it = std::upper_bound(
      p.pts.begin(), p.pts.end(), w0,
      [](double v, const TimedWaypoint& w) { return v < w.t; });
  for (; it != p.pts.end() && it->t < w1; ++it) ts.push_back(it->t);
}

// Exact minimum separation of two paths over [w0, w1]. Both are linear
// between the union of their waypoint times, so each sub-window reduces to
// one clamped quadratic.
std::pair<double, double> window_pair_min(const TimedPath& pa,
                                          const TimedPath& pb, double w0,
                                          double w1,
                                          std::vector<double>& scratch) {
  scratch.clear();
  scratch.push_back(w0);
  if (w1 > w0) scratch.push_back(w1);
  collect_breaks(pa, w0, w1, scratch);
  collect_breaks(pb, w0, w1, scratch);
  std::sort(scratch.begin(), scratch.end());
  scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());

  if (scratch.size() == 1) {
    const double t = scratch.front();
    return {distance(pa.position_at(t), pb.position_at(t)), t};
  }

  double best_d = std::numeric_limits<double>::infinity();
  double best_t = w0;
  for (size_t i = 0; i + 1 < scratch.size(); ++i) {
    const double u = scratch[i];
    const double v = scratch[i + 1];
    const Point a0 = pa.position_at(u);
    const Point a1 = pa.position_at(v);
    const Point b0 = pb.position_at(u);
    const Point b1 = pb.position_at(v);
    const auto [d, t] = min_separation(a0, u, a1, v, b0, u, b1, v, u, v);
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  }
  return {best_d, best_t};
}

uint64_t pair_key(int a, int b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}

// Minimum separation between one linear motion (a0 at t0 to a1 at t1) and a
// path over [t0, t1], stopping early once `bail_below` is undershot.
double edge_path_min(Point a0, double t0, Point a1, double t1,
                     const TimedPath& path, double bail_below,
                     std::vector<double>& scratch) {
  scratch.clear();
  scratch.push_back(t0);
  scratch.push_back(t1);
  collect_breaks(path, t0, t1, scratch);
  std::sort(scratch.begin(), scratch.end());
  scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());

  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < scratch.size(); ++i) {
    const double u = scratch[i];
    const double v = scratch[i + 1];
    const Point b0 = path.position_at(u);
    const Point b1 = path.position_at(v);
    const auto [d, t] =
        min_separation(a0, t0, a1, t1, b0, u, b1, v, u, v);
    (void)t;
    best = std::min(best, d);
    if (best < bail_below) return best;
  }
  return best;
}

}  // namespace

std::pair<double, double> pair_min_separation(const TimedPath& pa,
                                              const TimedPath& pb) {
  const double w0 = std::min(pa.start_time(), pb.start_time());
  const double w1 = std::max(pa.end_time(), pb.end_time());
  std::vector<double> scratch;
  return window_pair_min(pa, pb, w0, w1, scratch);
}

std::vector<ConflictEvent> detect_intersections(std::span<const TimedPath> paths,
                                                double radius) {
  const int n = static_cast<int>(paths.size());
  std::vector<ConflictEvent> events;
  if (n < 2) return events;

  const double bar = 2.0 * radius - kDetectSlack;

  double t_end = 0.0;
  for (const TimedPath& p : paths) t_end = std::max(t_end, p.end_time());
  const int windows = std::max(1, static_cast<int>(std::ceil(t_end - kTimeEps)));

  // Candidate pruning buckets coarse enough that every pair able to dip
  // below 2 * radius within a unit window shares a 3x3 bucket neighborhood:
  // endpoint separation of such a pair is at most 2 * radius + sqrt(2) < 4.
  const double bucket = 4.0;
  const auto bucket_key = [&](Point p) {
    const int64_t bx = static_cast<int64_t>(std::floor(p.x / bucket));
    const int64_t by = static_cast<int64_t>(std::floor(p.y / bucket));
    return (static_cast<uint64_t>(bx + (1 << 20)) << 32) |
           static_cast<uint64_t>(static_cast<uint32_t>(by + (1 << 20)));
  };

  std::unordered_map<uint64_t, std::pair<double, double>> best_by_pair;
  std::vector<std::pair<uint64_t, int>> entries;
  std::vector<uint64_t> candidates;
  std::vector<Point> at0(static_cast<size_t>(n)), at1(static_cast<size_t>(n));
  std::vector<double> scratch;

  // Window times are queried in nondecreasing order per path, so a forward
  // cursor lands on the same piece a binary search would.
  std::vector<size_t> cursor(static_cast<size_t>(n), 0);
  const auto pos_walk = [&](int i, double t) -> Point {
    const auto& pts = paths[static_cast<size_t>(i)].pts;
    if (pts.empty()) return {};
    if (t <= pts.front().t) return pts.front().p;
    if (t >= pts.back().t) return pts.back().p;
    size_t& cur = cursor[static_cast<size_t>(i)];
    while (cur + 2 < pts.size() && pts[cur + 1].t <= t) ++cur;
    const TimedWaypoint& a = pts[cur];
    const TimedWaypoint& b = pts[cur + 1];
    const double u = (t - a.t) / (b.t - a.t);
    return a.p + u * (b.p - a.p);
  };

  for (int w = 0; w < windows; ++w) {
    const double w0 = static_cast<double>(w);
    const double w1 = std::min(w0 + 1.0, std::max(t_end, w0));

    // Window fronts are shared: positions at w equal positions at the
    // previous window's w1 for every window but the last.
    if (w == 0) {
      for (int i = 0; i < n; ++i) at0[static_cast<size_t>(i)] = pos_walk(i, w0);
    } else {
      std::swap(at0, at1);
    }
    entries.clear();
    for (int i = 0; i < n; ++i) {
      at1[static_cast<size_t>(i)] = pos_walk(i, w1);
      const uint64_t k0 = bucket_key(at0[static_cast<size_t>(i)]);
      const uint64_t k1 = bucket_key(at1[static_cast<size_t>(i)]);
      entries.push_back({k0, i});
      if (k1 != k0) entries.push_back({k1, i});
    }
    std::sort(entries.begin(), entries.end());

    // Each unordered bucket pair is visited once, through half of the
    // neighborhood offsets; pairs come out identical to a full 3x3 sweep.
    candidates.clear();
    const int kOffsets[5][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}};
    for (size_t run = 0; run < entries.size();) {
      const uint64_t key = entries[run].first;
      size_t run_end = run;
      while (run_end < entries.size() && entries[run_end].first == key)
        ++run_end;
      const int64_t bx = static_cast<int64_t>(key >> 32) - (1 << 20);
      const int64_t by =
          static_cast<int64_t>(static_cast<int32_t>(key & 0xffffffffu)) -
          (1 << 20);
      for (size_t p = run; p < run_end; ++p)
        for (size_t q = p + 1; q < run_end; ++q)
          candidates.push_back(
              pair_key(entries[p].second, entries[q].second));
      for (int o = 1; o < 5; ++o) {
        const uint64_t nk =
            (static_cast<uint64_t>(bx + kOffsets[o][0] + (1 << 20)) << 32) |
            static_cast<uint64_t>(
                static_cast<uint32_t>(by + kOffsets[o][1] + (1 << 20)));
        auto it = std::lower_bound(entries.begin(), entries.end(),
                                   std::make_pair(nk, -1));
        for (; it != entries.end() && it->first == nk; ++it)
          for (size_t p = run; p < run_end; ++p) {
            const int i = entries[p].second;
            const int j = it->second;
            if (i == j) continue;
            candidates.push_back(pair_key(std::min(i, j), std::max(i, j)));
          }
      }
      run = run_end;
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    for (const uint64_t key : candidates) {
      const int i = static_cast<int>(key >> 32);
      const int j = static_cast<int>(key & 0xffffffffu);
      const double d0 = distance(at0[static_cast<size_t>(i)],
                                 at0[static_cast<size_t>(j)]);
      const double d1 = distance(at1[static_cast<size_t>(i)],
                                 at1[static_cast<size_t>(j)]);
      if (std::min(d0, d1) >
          2.0 * radius + kHalfWindowClosing + 1e-6)
        continue;
      const auto [d, t] =
          window_pair_min(paths[static_cast<size_t>(i)],
                          paths[static_cast<size_t>(j)], w0, w1, scratch);
      if (d >= bar) continue;
      auto it = best_by_pair.find(key);
      if (it == best_by_pair.end())
        best_by_pair.emplace(key, std::make_pair(d, t));
      else if (d < it->second.first)
        it->second = {d, t};
    }
  }

  events.reserve(best_by_pair.size());
  for (const auto& [key, dt] : best_by_pair) {
    ConflictEvent ev;
    ev.a = static_cast<int>(key >> 32);
    ev.b = static_cast<int>(key & 0xffffffffu);
    ev.separation = dt.first;
    ev.time = dt.second;
    events.push_back(ev);
  }
  std::sort(events.begin(), events.end(),
            [](const ConflictEvent& x, const ConflictEvent& y) {
              if (x.time != y.time) return x.time < y.time;
              if (x.a != y.a) return x.a < y.a;
              return x.b < y.b;
            });
  return events;
}

namespace {

void push_blocked(std::vector<std::pair<double, double>>& blocked, double lo,
                  double hi, double t_min, double horizon) {
  lo = std::max(lo, t_min);
  hi = std::min(hi, horizon);
  if (lo <= hi) blocked.push_back({lo, hi});
}

// Safe intervals restricted to [t_min, horizon]. The public entry point
// fixes t_min = 0; replanning clips to its own segment window.
std::vector<SafeInterval> safe_intervals_clipped(
    CellCoord cell, std::span<const TimedPath> fixed, double radius,
    double t_min, double horizon) {
  const Point c = cell_center(cell);
  const double reach = 2.0 * radius;
  std::vector<std::pair<double, double>> blocked;

  for (const TimedPath& path : fixed) {
    if (path.pts.empty()) continue;
    if (path.start_time() > t_min &&
        distance(path.pts.front().p, c) < reach)
      push_blocked(blocked, t_min, path.start_time(), t_min, horizon);
    if (path.end_time() < horizon && distance(path.pts.back().p, c) < reach)
      push_blocked(blocked, path.end_time(), horizon, t_min, horizon);

    // Only pieces overlapping [t_min, horizon] can contribute.
    size_t i = path.pts.size() < 2 ? 0 : path.piece_at(t_min);
    for (; i + 1 < path.pts.size(); ++i) {
      const TimedWaypoint& a = path.pts[i];
      const TimedWaypoint& b = path.pts[i + 1];
      if (a.t > horizon) break;
      const auto win = proximity_window(a.p, a.t, b.p, b.t, c, reach);
      if (win) push_blocked(blocked, win->first, win->second, t_min, horizon);
    }
    if (path.pts.size() == 1 && distance(path.pts.front().p, c) < reach)
      push_blocked(blocked, t_min, horizon, t_min, horizon);
  }

  std::sort(blocked.begin(), blocked.end());
  std::vector<SafeInterval> safe;
  double cursor = t_min;
  for (const auto& [lo, hi] : blocked) {
    if (lo > cursor + kTimeEps) safe.push_back({cursor, lo});
    cursor = std::max(cursor, hi);
  }
  if (cursor <= horizon) safe.push_back({cursor, horizon});
  return safe;
}

}  // namespace

std::vector<SafeInterval> build_safe_intervals(CellCoord cell,
                                               std::span<const TimedPath> fixed,
                                               double radius, double horizon) {
  return safe_intervals_clipped(cell, fixed, radius, 0.0, horizon);
}

namespace {

struct SippNode {
  int g = 0;            // arrival timestep at this (cell, interval)
  uint64_t parent = 0;  // state key of the predecessor
  int depart = -1;      // departure timestep from the predecessor's cell
  bool has_parent = false;
};

uint64_t state_key(size_t cell, size_t interval) {
  return (static_cast<uint64_t>(cell) << 16) | interval;
}

int hops_lower_bound(CellCoord a, CellCoord b, Connectivity conn) {
  if (conn == Connectivity::Eight) return chebyshev_distance(a, b);
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

}  // namespace

std::optional<TimedPath> sipp_replan(const GridMap& map, PinnedWaypoint pin_a,
                                     PinnedWaypoint pin_b,
                                     std::span<const TimedPath> fixed,
                                     Connectivity conn, double radius,
                                     bool allow_corner_cutting) {
  const int t_a = pin_a.t;
  const int t_b = pin_b.t;
  if (t_b <= t_a) return std::nullopt;
  const double horizon = static_cast<double>(t_b);
  const double clearance = 2.0 * radius + kReplanMargin;

  // Arrival at any searched cell costs at least its hop distance from the
  // opening pin, and expansion requires hops to the closing pin to still fit
  // before t_b, so the search stays inside the hop ellipse around the pins
  // plus one neighbor ring. Fixed paths clear of that span by more than the
  // clearance during [t_a, t_b] cannot contribute a blocked interval, an
  // edge conflict, or a verification failure.
  const double reach_pad = clearance + 1e-6;
  const double span = static_cast<double>(t_b - t_a);
  const double sx =
      0.5 * (span - std::abs(pin_a.cell.x - pin_b.cell.x)) + 1.0;
  const double sy =
      0.5 * (span - std::abs(pin_a.cell.y - pin_b.cell.y)) + 1.0;
  const double bx0 = std::min(pin_a.cell.x, pin_b.cell.x) - sx - reach_pad;
  const double bx1 =
      std::max(pin_a.cell.x, pin_b.cell.x) + 1.0 + sx + reach_pad;
  const double by0 = std::min(pin_a.cell.y, pin_b.cell.y) - sy - reach_pad;
  const double by1 =
      std::max(pin_a.cell.y, pin_b.cell.y) + 1.0 + sy + reach_pad;
  std::vector<double> near_scratch;
  std::vector<TimedPath> near_paths;
  for (const TimedPath& path : fixed) {
    if (path.pts.empty()) continue;
    near_scratch.clear();
    near_scratch.push_back(static_cast<double>(t_a));
    near_scratch.push_back(horizon);
    collect_breaks(path, static_cast<double>(t_a), horizon, near_scratch);
    std::sort(near_scratch.begin(), near_scratch.end());
    bool near = false;
    for (size_t i = 0; !near && i + 1 < near_scratch.size(); ++i) {
      const Point p = path.position_at(near_scratch[i]);
      const Point q = path.position_at(near_scratch[i + 1]);
      const double lox = std::min(p.x, q.x), hix = std::max(p.x, q.x);
      const double loy = std::min(p.y, q.y), hiy = std::max(p.y, q.y);
      near = hix >= bx0 && lox <= bx1 && hiy >= by0 && loy <= by1;
    }
    if (near) near_paths.push_back(path);
  }
  const std::span<const TimedPath> active(near_paths);

  std::unordered_map<size_t, std::vector<SafeInterval>> interval_cache;
  const auto intervals_of =
      [&](CellCoord c) -> const std::vector<SafeInterval>& {
    const size_t idx = map.index(c);
    auto it = interval_cache.find(idx);
    if (it == interval_cache.end())
      it = interval_cache
               .emplace(idx, safe_intervals_clipped(
                                 c, active, radius,
                                 static_cast<double>(t_a), horizon))
               .first;
    return it->second;
  };

  const auto& start_ivs = intervals_of(pin_a.cell);
  size_t start_iv = start_ivs.size();
  for (size_t k = 0; k < start_ivs.size(); ++k) {
    if (start_ivs[k].start <= t_a + kTimeEps &&
        start_ivs[k].end >= t_a - kTimeEps) {
      start_iv = k;
      break;
    }
  }
  if (start_iv == start_ivs.size()) return std::nullopt;
  if (hops_lower_bound(pin_a.cell, pin_b.cell, conn) > t_b - t_a)
    return std::nullopt;

  std::unordered_map<uint64_t, SippNode> nodes;
  using QueueItem = std::pair<int, uint64_t>;  // (f, state)
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> open;

  const uint64_t start_state = state_key(map.index(pin_a.cell), start_iv);
  nodes[start_state] = SippNode{t_a, 0, -1, false};
  open.push({t_a + hops_lower_bound(pin_a.cell, pin_b.cell, conn), start_state});

  std::vector<CellCoord> neigh;
  std::vector<double> scratch;
  uint64_t goal_state = 0;
  bool found = false;
  int expansions = 0;
  constexpr int kExpansionBudget = 200000;

  const auto edge_clear = [&](Point from, Point to, int tau) {
    for (const TimedPath& path : active) {
      const Point q0 = path.position_at(tau);
      const Point q1 = path.position_at(tau + 1.0);
      const double d0 = distance(from, q0);
      const double d1 = distance(to, q1);
      if (std::min(d0, d1) > clearance + kHalfWindowClosing) continue;
      if (edge_path_min(from, tau, to, tau + 1.0, path, clearance, scratch) <
          clearance)
        return false;
    }
    return true;
  };

  while (!open.empty()) {
    const auto [f, state] = open.top();
    open.pop();
    const SippNode node = nodes[state];
    const size_t cell_idx = static_cast<size_t>(state >> 16);
    const size_t iv_idx = static_cast<size_t>(state & 0xffff);
    const CellCoord cell = map.cell_at(cell_idx);
    const SafeInterval& iv = intervals_of(cell)[iv_idx];
    if (f != node.g + hops_lower_bound(cell, pin_b.cell, conn)) continue;

    if (cell == pin_b.cell && iv.end >= horizon - kTimeEps && node.g <= t_b) {
      goal_state = state;
      found = true;
      break;
    }
    if (++expansions > kExpansionBudget) return std::nullopt;

    const int depart_max =
        std::min(static_cast<int>(std::floor(iv.end + kTimeEps)), t_b - 1);
    neighbors_into(map, cell, conn, allow_corner_cutting, neigh);
    for (const CellCoord next : neigh) {
      if (next == cell) continue;
      const int h_next = hops_lower_bound(next, pin_b.cell, conn);
      const auto& next_ivs = intervals_of(next);
      for (size_t k = 0; k < next_ivs.size(); ++k) {
        const SafeInterval& J = next_ivs[k];
        int lo = std::max(
            node.g, static_cast<int>(std::ceil(J.start - 1.0 - kTimeEps)));
        int hi = std::min(
            {depart_max,
             static_cast<int>(std::floor(J.end - 1.0 + kTimeEps)),
             t_b - 1 - h_next});
        for (int tau = lo; tau <= hi; ++tau) {
          if (!edge_clear(cell_center(cell), cell_center(next), tau)) continue;
          const uint64_t ns = state_key(map.index(next), k);
          const int ng = tau + 1;
          auto it = nodes.find(ns);
          if (it != nodes.end() && it->second.g <= ng) break;
          nodes[ns] = SippNode{ng, state, tau, true};
          open.push({ng + h_next, ns});
          break;  // earliest feasible arrival dominates within (next, J)
        }
      }
    }
  }

  if (!found) return std::nullopt;

  // Chain of (cell, departure from parent) back to the start.
  std::vector<std::pair<CellCoord, int>> hops;
  uint64_t s = goal_state;
  while (nodes[s].has_parent) {
    hops.push_back({map.cell_at(static_cast<size_t>(s >> 16)), nodes[s].depart});
    s = nodes[s].parent;
  }
  std::reverse(hops.begin(), hops.end());

  TimedPath seg;
  seg.pts.push_back({static_cast<double>(t_a), cell_center(pin_a.cell)});
  CellCoord cur = pin_a.cell;
  int cur_t = t_a;
  for (const auto& [next, tau] : hops) {
    if (tau > cur_t)
      seg.pts.push_back({static_cast<double>(tau), cell_center(cur)});
    seg.pts.push_back({static_cast<double>(tau + 1), cell_center(next)});
    cur = next;
    cur_t = tau + 1;
  }
  if (cur_t < t_b)
    seg.pts.push_back({static_cast<double>(t_b), cell_center(pin_b.cell)});

  // Arrival must coincide with the closing pin.
  if (!(cur == pin_b.cell)) return std::nullopt;

  std::vector<double> verify_scratch;
  for (const TimedPath& path : active) {
    const auto [d, t] = window_pair_min(seg, path, static_cast<double>(t_a),
                                        horizon, verify_scratch);
    (void)t;
    if (d < 2.0 * radius - kDetectSlack) return std::nullopt;
  }
  return seg;
}

namespace {

// Replaces the waypoints of `path` between times t0 and t1 with `seg`.
// Both boundary times must be retained waypoints of `path`. Returns whether
// anything changed.
bool splice_segment(TimedPath& path, const TimedPath& seg, int t0, int t1) {
  size_t i0 = path.pts.size();
  size_t i1 = path.pts.size();
  for (size_t i = 0; i < path.pts.size(); ++i) {
    if (std::abs(path.pts[i].t - t0) < kTimeEps) i0 = i;
    if (std::abs(path.pts[i].t - t1) < kTimeEps) i1 = i;
  }
  if (i0 >= path.pts.size() || i1 >= path.pts.size() || i1 < i0)
    throw std::logic_error("splice endpoints must be retained waypoints");

  bool same = (i1 - i0 + 1 == seg.pts.size());
  if (same) {
    for (size_t k = 0; k < seg.pts.size(); ++k) {
      const TimedWaypoint& a = path.pts[i0 + k];
      const TimedWaypoint& b = seg.pts[k];
      if (std::abs(a.t - b.t) > kTimeEps || std::abs(a.p.x - b.p.x) > kTimeEps ||
          std::abs(a.p.y - b.p.y) > kTimeEps) {
        same = false;
        break;
      }
    }
  }
  if (same) return false;

  std::vector<TimedWaypoint> merged;
  merged.reserve(i0 + seg.pts.size() + (path.pts.size() - i1));
  merged.insert(merged.end(), path.pts.begin(),
                path.pts.begin() + static_cast<std::ptrdiff_t>(i0));
  merged.insert(merged.end(), seg.pts.begin(), seg.pts.end());
  merged.insert(merged.end(),
                path.pts.begin() + static_cast<std::ptrdiff_t>(i1) + 1,
                path.pts.end());
  path.pts = std::move(merged);
  return true;
}

}  // namespace

ResolveResult resolve(std::vector<TimedPath> paths, const DiscretePlan& original,
                      const InteractionSchedule& schedule, const GridMap& map,
                      Connectivity conn, double radius,
                      bool allow_corner_cutting) {
  ResolveResult result;
  result.paths = std::move(paths);
  const double bar = 2.0 * radius - kDetectSlack;

  std::unordered_set<uint64_t> seen;
  std::unordered_set<uint64_t> frozen;
  constexpr int kMaxPasses = 64;

  std::vector<ConflictEvent> events;
  bool dirty = true;  // paths changed since `events` was computed
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    events = detect_intersections(result.paths, radius);
    dirty = false;
    for (const ConflictEvent& ev : events)
      if (seen.insert(pair_key(ev.a, ev.b)).second)
        ++result.intersections_introduced;

    bool any_actionable = false;
    for (const ConflictEvent& ev : events) {
      const uint64_t key = pair_key(ev.a, ev.b);
      if (frozen.count(key)) continue;
      any_actionable = true;

      // Earlier repairs in this pass may already have separated the pair.
      const auto [d, t] =
          pair_min_separation(result.paths[static_cast<size_t>(ev.a)],
                              result.paths[static_cast<size_t>(ev.b)]);
      if (d >= bar) continue;

      const int lower = ev.b;  // lower priority replans
      const auto [pa, pb] = schedule.bracketing(lower, t);

      std::vector<TimedPath> fixed;
      fixed.reserve(result.paths.size() - 1);
      for (size_t k = 0; k < result.paths.size(); ++k)
        if (static_cast<int>(k) != lower) fixed.push_back(result.paths[k]);

      auto candidate = sipp_replan(map, pa, pb, fixed, conn, radius,
                                   allow_corner_cutting);
      bool repaired = false;
      if (candidate && pb.t > pa.t) {
        if (splice_segment(result.paths[static_cast<size_t>(lower)],
                           *candidate, pa.t, pb.t)) {
          ++result.replanned_segments;
          repaired = true;
          dirty = true;
        }
      }
      if (repaired) continue;

      // Fall back to the original discrete motion for both agents'
      // bracketing segments. If neither changes, the pair cannot make
      // further progress and is abandoned.
      bool changed = false;
      for (const int agent : {ev.a, ev.b}) {
        const auto [qa, qb] = schedule.bracketing(agent, t);
        if (qb.t <= qa.t) continue;
        const TimedPath raw =
            discrete_to_path(original, static_cast<size_t>(agent), qa.t, qb.t);
        if (splice_segment(result.paths[static_cast<size_t>(agent)], raw, qa.t,
                           qb.t)) {
          changed = true;
          ++result.reverted_segments;
          dirty = true;
        }
      }
      if (!changed) frozen.insert(key);
    }
    if (!any_actionable) break;
  }

  result.residual =
      dirty ? detect_intersections(result.paths, radius) : std::move(events);
  result.intersections_resolved =
      result.intersections_introduced - static_cast<int>(result.residual.size());
  return result;
}

}  // namespace mapf
