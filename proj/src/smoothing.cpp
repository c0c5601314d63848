#include "mapf/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mapf {

TimedPath discrete_to_path(const DiscretePlan& plan, size_t agent) {
  return discrete_to_path(plan, agent, 0, plan.t_max());
}

TimedPath discrete_to_path(const DiscretePlan& plan, size_t agent, int t_from,
                           int t_to) {
  TimedPath path;
  path.pts.reserve(static_cast<size_t>(t_to - t_from) + 1);
  for (int t = t_from; t <= t_to; ++t)
    path.pts.push_back({static_cast<double>(t),
                        cell_center(plan.configs[static_cast<size_t>(t)][agent])});
  return path;
}

bool line_of_sight(const TimedWaypoint& a, const TimedWaypoint& b,
                   const GridMap& map, const InteractionSchedule& schedule,
                   int self_agent) {
  for (CellCoord c : supercover_cells(a.p, b.p))
    if (!map.passable(c)) return false;

  if (schedule.regions_by_step.empty()) return true;
  // Region windows are [t, t+1]; buckets t with window overlapping [a.t, b.t].
  const int last = static_cast<int>(schedule.regions_by_step.size()) - 1;
  const int lo = std::max(0, static_cast<int>(std::ceil(a.t - 1.0)));
  const int hi = std::min(last, static_cast<int>(std::floor(b.t)));
  for (int step = lo; step <= hi; ++step) {
    for (int32_t ri : schedule.regions_by_step[static_cast<size_t>(step)]) {
      const CriticalRegion& r = schedule.regions[static_cast<size_t>(ri)];
      if (r.agent == self_agent) continue;
      for (CellCoord cell : r.cells) {
        const auto window = cell_entry_window(a.p, a.t, b.p, b.t, cell);
        if (!window) continue;
        if (window->first <= r.t_end && window->second >= r.t_start)
          return false;
      }
    }
  }
  return true;
}

RegionIndex build_region_index(const InteractionSchedule& schedule,
                               const GridMap& map) {
  RegionIndex idx;
  const double b = RegionIndex::kBucket;
  idx.bw = static_cast<int>(map.width() / b) + 1;
  idx.bh = static_cast<int>(map.height() / b) + 1;
  idx.buckets.resize(static_cast<size_t>(idx.bw) * idx.bh);
  const size_t n = schedule.regions.size();
  idx.step.resize(n);
  idx.xlo.resize(n);
  idx.ylo.resize(n);
  idx.xhi.resize(n);
  idx.yhi.resize(n);
  for (size_t ri = 0; ri < n; ++ri) {
    const CriticalRegion& r = schedule.regions[ri];
    idx.step[ri] = static_cast<int>(r.t_start);
    double xlo = 1e18, ylo = 1e18, xhi = -1e18, yhi = -1e18;
    for (CellCoord c : r.cells) {
      xlo = std::min(xlo, static_cast<double>(c.x));
      ylo = std::min(ylo, static_cast<double>(c.y));
      xhi = std::max(xhi, static_cast<double>(c.x) + 1.0);
      yhi = std::max(yhi, static_cast<double>(c.y) + 1.0);
    }
    idx.xlo[ri] = xlo;
    idx.ylo[ri] = ylo;
    idx.xhi[ri] = xhi;
    idx.yhi[ri] = yhi;
    const int bx0 = std::clamp(static_cast<int>(std::floor(xlo / b)), 0,
                               idx.bw - 1);
    const int bx1 = std::clamp(static_cast<int>(std::floor(xhi / b)), 0,
                               idx.bw - 1);
    const int by0 = std::clamp(static_cast<int>(std::floor(ylo / b)), 0,
                               idx.bh - 1);
    const int by1 = std::clamp(static_cast<int>(std::floor(yhi / b)), 0,
                               idx.bh - 1);
    for (int by = by0; by <= by1; ++by)
      for (int bx = bx0; bx <= bx1; ++bx)
        idx.buckets[static_cast<size_t>(by) * idx.bw + bx].push_back(
            static_cast<int32_t>(ri));
  }
  return idx;
}

namespace {

constexpr double kBoxSlack = 1e-6;

// Whether the segment p-q comes within kBoxSlack of the closed box. Used as
// a reject-only filter ahead of the exact per-cell windows.
bool segment_near_box(Point p, Point q, double xlo, double ylo, double xhi,
                      double yhi) {
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  double lo = 0.0, hi = 1.0;
  const auto slab = [&](double s, double d, double alo, double ahi) {
    if (d == 0.0) return s >= alo && s <= ahi;
    double ta = (alo - s) / d;
    double tb = (ahi - s) / d;
    if (ta > tb) std::swap(ta, tb);
    lo = std::max(lo, ta);
    hi = std::min(hi, tb);
    return true;
  };
  if (!slab(p.x, dx, xlo - kBoxSlack, xhi + kBoxSlack)) return false;
  if (!slab(p.y, dy, ylo - kBoxSlack, yhi + kBoxSlack)) return false;
  return lo <= hi;
}

struct LosWorkspace {
  std::vector<int32_t> visited;  // epoch stamp per region
  std::vector<double> ts;        // grid-line parameters along the chord
  int32_t epoch = 0;
};

// Passability of every cell supercover_cells would report for the chord,
// tested in place so the hot path does not build a cell list. A cell may be
// tested more than once; the verdict only needs one blocked cell to exist.
bool chord_cells_passable(Point p, Point q, const GridMap& map,
                          std::vector<double>& ts) {
  const auto point_ok = [&map](Point m) {
    const double fx = std::floor(m.x);
    const double fy = std::floor(m.y);
    const bool on_x = (m.x == fx);
    const bool on_y = (m.y == fy);
    const int cx = static_cast<int>(fx);
    const int cy = static_cast<int>(fy);
    if (!map.passable({cx, cy})) return false;
    if (on_x && !map.passable({cx - 1, cy})) return false;
    if (on_y && !map.passable({cx, cy - 1})) return false;
    if (on_x && on_y && !map.passable({cx - 1, cy - 1})) return false;
    return true;
  };
  if (p.x == q.x && p.y == q.y) return point_ok(p);

  const Point d = q - p;
  ts.clear();
  ts.push_back(0.0);
  ts.push_back(1.0);
  if (d.x != 0.0) {
    const int klo = static_cast<int>(std::ceil(std::min(p.x, q.x)));
    const int khi = static_cast<int>(std::floor(std::max(p.x, q.x)));
    for (int k = klo; k <= khi; ++k) ts.push_back((k - p.x) / d.x);
  }
  if (d.y != 0.0) {
    const int klo = static_cast<int>(std::ceil(std::min(p.y, q.y)));
    const int khi = static_cast<int>(std::floor(std::max(p.y, q.y)));
    for (int k = klo; k <= khi; ++k) ts.push_back((k - p.y) / d.y);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  size_t lo = 0, hi = ts.size();
  while (lo < hi && ts[lo] < 0.0) ++lo;
  while (hi > lo && ts[hi - 1] > 1.0) --hi;

  for (size_t i = lo; i + 1 < hi; ++i) {
    const double mid = 0.5 * (ts[i] + ts[i + 1]);
    if (!point_ok(p + mid * d)) return false;
  }
  for (size_t i = lo; i < hi; ++i) {
    const Point m = p + ts[i] * d;
    const double rx = std::round(m.x);
    const double ry = std::round(m.y);
    const bool on_x = std::abs(m.x - rx) < 1e-9;
    const bool on_y = std::abs(m.y - ry) < 1e-9;
    if (!on_x && !on_y) continue;
    if (!point_ok({on_x ? rx : m.x, on_y ? ry : m.y})) return false;
  }
  return true;
}

// Identical verdicts to line_of_sight; candidate regions come from the index
// buckets the chord crosses instead of from a scan over every step bucket.
bool line_of_sight_indexed(const TimedWaypoint& a, const TimedWaypoint& b,
                           const GridMap& map,
                           const InteractionSchedule& schedule,
                           int self_agent, const RegionIndex& idx,
                           LosWorkspace& ws) {
  if (!chord_cells_passable(a.p, b.p, map, ws.ts)) return false;

  if (schedule.regions_by_step.empty() || schedule.regions.empty())
    return true;
  const int last = static_cast<int>(schedule.regions_by_step.size()) - 1;
  const int lo = std::max(0, static_cast<int>(std::ceil(a.t - 1.0)));
  const int hi = std::min(last, static_cast<int>(std::floor(b.t)));
  if (lo > hi) return true;

  ws.visited.resize(schedule.regions.size(), 0);
  ++ws.epoch;

  const double bsz = RegionIndex::kBucket;
  const double x0 = std::min(a.p.x, b.p.x);
  const double x1 = std::max(a.p.x, b.p.x);
  const int bx0 = std::clamp(
      static_cast<int>(std::floor((x0 - kBoxSlack) / bsz)), 0, idx.bw - 1);
  const int bx1 = std::clamp(
      static_cast<int>(std::floor((x1 + kBoxSlack) / bsz)), 0, idx.bw - 1);
  const double dx = b.p.x - a.p.x;
  const double dy = b.p.y - a.p.y;

  for (int bx = bx0; bx <= bx1; ++bx) {
    // Chord's y-span within this bucket column, padded outward.
    double ylo, yhi;
    if (dx == 0.0) {
      ylo = std::min(a.p.y, b.p.y);
      yhi = std::max(a.p.y, b.p.y);
    } else {
      const double cxl = static_cast<double>(bx) * bsz - kBoxSlack;
      const double cxr = (static_cast<double>(bx) + 1.0) * bsz + kBoxSlack;
      double ta = (cxl - a.p.x) / dx;
      double tb = (cxr - a.p.x) / dx;
      if (ta > tb) std::swap(ta, tb);
      ta = std::max(ta, 0.0);
      tb = std::min(tb, 1.0);
      if (ta > tb) continue;
      const double ya = a.p.y + ta * dy;
      const double yb = a.p.y + tb * dy;
      ylo = std::min(ya, yb);
      yhi = std::max(ya, yb);
    }
    const int by0 = std::clamp(
        static_cast<int>(std::floor((ylo - kBoxSlack) / bsz)), 0, idx.bh - 1);
    const int by1 = std::clamp(
        static_cast<int>(std::floor((yhi + kBoxSlack) / bsz)), 0, idx.bh - 1);
    for (int by = by0; by <= by1; ++by) {
      for (int32_t ri :
           idx.buckets[static_cast<size_t>(by) * idx.bw + bx]) {
        if (ws.visited[static_cast<size_t>(ri)] == ws.epoch) continue;
        ws.visited[static_cast<size_t>(ri)] = ws.epoch;
        if (idx.step[static_cast<size_t>(ri)] < lo ||
            idx.step[static_cast<size_t>(ri)] > hi)
          continue;
        const CriticalRegion& r =
            schedule.regions[static_cast<size_t>(ri)];
        if (r.agent == self_agent) continue;
        if (!segment_near_box(a.p, b.p, idx.xlo[static_cast<size_t>(ri)],
                              idx.ylo[static_cast<size_t>(ri)],
                              idx.xhi[static_cast<size_t>(ri)],
                              idx.yhi[static_cast<size_t>(ri)]))
          continue;
        for (CellCoord cell : r.cells) {
          const auto window = cell_entry_window(a.p, a.t, b.p, b.t, cell);
          if (!window) continue;
          if (window->first <= r.t_end && window->second >= r.t_start)
            return false;
        }
      }
    }
  }
  return true;
}

std::vector<TimedWaypoint> string_pull_indexed(
    const std::vector<TimedWaypoint>& segment, const GridMap& map,
    const InteractionSchedule& schedule, int self_agent,
    const RegionIndex& idx, LosWorkspace& ws) {
  std::vector<TimedWaypoint> out;
  if (segment.size() <= 2) return segment;
  out.push_back(segment.front());
  size_t anchor = 0;
  while (anchor + 1 < segment.size()) {
    // Scan forward; stop at the first failure, keep the last pass. When even
    // the immediate step fails the original step is retained unchanged.
    size_t last_ok = anchor + 1;
    for (size_t j = anchor + 1; j < segment.size(); ++j) {
      if (!line_of_sight_indexed(segment[anchor], segment[j], map, schedule,
                                 self_agent, idx, ws))
        break;
      last_ok = j;
    }
    out.push_back(segment[last_ok]);
    anchor = last_ok;
  }
  return out;
}

}  // namespace

std::vector<TimedWaypoint> string_pull(const std::vector<TimedWaypoint>& segment,
                                       const GridMap& map,
                                       const InteractionSchedule& schedule,
                                       int self_agent) {
  const RegionIndex idx = build_region_index(schedule, map);
  LosWorkspace ws;
  return string_pull_indexed(segment, map, schedule, self_agent, idx, ws);
}

std::vector<TimedPath> smooth_plan(const DiscretePlan& plan,
                                   const GridMap& map,
                                   const InteractionSchedule& schedule) {
  const size_t n = plan.agent_count();
  std::vector<TimedPath> paths(n);
  const RegionIndex idx = build_region_index(schedule, map);
  LosWorkspace ws;
  for (size_t i = 0; i < n; ++i) {
    const auto& pins = schedule.pinned[i];
    TimedPath& path = paths[i];
    if (pins.size() < 2) {
      path = discrete_to_path(plan, i);
      continue;
    }
    std::vector<TimedWaypoint> segment;
    for (size_t s = 0; s + 1 < pins.size(); ++s) {
      segment.clear();
      for (int t = pins[s].t; t <= pins[s + 1].t; ++t)
        segment.push_back(
            {static_cast<double>(t),
             cell_center(plan.configs[static_cast<size_t>(t)][i])});
      const std::vector<TimedWaypoint> pulled = string_pull_indexed(
          segment, map, schedule, static_cast<int>(i), idx, ws);
      // Segment boundaries are shared pins; keep each exactly once.
      const size_t from = path.pts.empty() ? 0 : 1;
      path.pts.insert(path.pts.end(), pulled.begin() + from, pulled.end());
    }
  }
  return paths;
}

std::vector<TimedPath> smooth_plan(const DiscretePlan& plan,
                                   const GridMap& map, Connectivity conn,
                                   SmoothingMode mode,
                                   const ScheduleOptions& options) {
  if (mode == SmoothingMode::Off) {
    std::vector<TimedPath> paths(plan.agent_count());
    for (size_t i = 0; i < plan.agent_count(); ++i)
      paths[i] = discrete_to_path(plan, i);
    return paths;
  }
  const InteractionSchedule schedule =
      mode == SmoothingMode::Aware ? build_schedule(plan, conn, map, options)
                                   : endpoint_schedule(plan);
  return smooth_plan(plan, map, schedule);
}

}  // namespace mapf
