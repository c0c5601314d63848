#include "mapf/geometry.hpp"

#include <algorithm>
#include <limits>

namespace mapf {

namespace {

// Cells touched by a single stationary point against closed squares. A point
// on an edge or corner belongs to every adjacent square.
void point_cells(Point p, std::vector<CellCoord>& out) {
  const double fx = std::floor(p.x);
  const double fy = std::floor(p.y);
  const bool on_x = (p.x == fx);
  const bool on_y = (p.y == fy);
  const int cx = static_cast<int>(fx);
  const int cy = static_cast<int>(fy);
  out.push_back({cx, cy});
  if (on_x) out.push_back({cx - 1, cy});
  if (on_y) out.push_back({cx, cy - 1});
  if (on_x && on_y) out.push_back({cx - 1, cy - 1});
}

void push_unique(std::vector<CellCoord>& cells, CellCoord c) {
  if (std::find(cells.begin(), cells.end(), c) == cells.end())
    cells.push_back(c);
}

}  // namespace

std::vector<CellCoord> supercover_cells(Point p, Point q) {
  std::vector<CellCoord> cells;
  if (p.x == q.x && p.y == q.y) {
    point_cells(p, cells);
    return cells;
  }

  const Point d = q - p;

  // Parameters where the segment meets integer grid lines, plus endpoints.
  std::vector<double> ts;
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
  while (!ts.empty() && ts.front() < 0.0) ts.erase(ts.begin());
  while (!ts.empty() && ts.back() > 1.0) ts.pop_back();

  std::vector<CellCoord> tmp;
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    const double mid = 0.5 * (ts[i] + ts[i + 1]);
    const Point m = p + mid * d;
    tmp.clear();
    point_cells(m, tmp);
    for (CellCoord c : tmp) push_unique(cells, c);
  }

  // Grid-line contacts at the events themselves. This catches endpoints on
  // boundaries and exact corner crossings, where all four squares around the
  // corner are touched.
  for (double t : ts) {
    const Point m = p + t * d;
    const double rx = std::round(m.x);
    const double ry = std::round(m.y);
    const bool on_x = std::abs(m.x - rx) < 1e-9;
    const bool on_y = std::abs(m.y - ry) < 1e-9;
    if (!on_x && !on_y) continue;
    const double px = on_x ? rx : m.x;
    const double py = on_y ? ry : m.y;
    tmp.clear();
    point_cells({px, py}, tmp);
    for (CellCoord c : tmp) push_unique(cells, c);
  }
  return cells;
}

std::optional<std::pair<double, double>> cell_entry_window(
    Point p, double t0, Point q, double t1, CellCoord cell) {
  const double xlo = cell.x, xhi = cell.x + 1.0;
  const double ylo = cell.y, yhi = cell.y + 1.0;
  double lo = t0, hi = t1;
  const double dt = t1 - t0;

  const auto slab = [&](double s0, double v, double alo, double ahi) {
    if (v == 0.0) return s0 >= alo && s0 <= ahi;
    double ta = t0 + (alo - s0) / v * dt;
    double tb = t0 + (ahi - s0) / v * dt;
    if (ta > tb) std::swap(ta, tb);
    lo = std::max(lo, ta);
    hi = std::min(hi, tb);
    return true;
  };

  const double vx = dt > 0.0 ? (q.x - p.x) / dt : 0.0;
  const double vy = dt > 0.0 ? (q.y - p.y) / dt : 0.0;
  // For zero-duration or stationary axes the slab test degenerates to
  // membership of the fixed coordinate.
  if (dt == 0.0 || (p.x == q.x && p.y == q.y)) {
    if (p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi)
      return std::make_pair(t0, t1);
    return std::nullopt;
  }
  if (!slab(p.x, vx * dt, xlo, xhi)) return std::nullopt;
  if (!slab(p.y, vy * dt, ylo, yhi)) return std::nullopt;
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

std::pair<double, double> min_separation(Point a0, double ta0, Point a1,
                                         double ta1, Point b0, double tb0,
                                         Point b1, double tb1, double t0,
                                         double t1) {
  const auto eval = [&](Point p0, double s0, Point p1, double s1, double t) {
    if (s1 <= s0) return p0;
    const double u = std::clamp((t - s0) / (s1 - s0), 0.0, 1.0);
    return p0 + u * (p1 - p0);
  };
  const Point pa0 = eval(a0, ta0, a1, ta1, t0);
  const Point pa1 = eval(a0, ta0, a1, ta1, t1);
  const Point pb0 = eval(b0, tb0, b1, tb1, t0);
  const Point pb1 = eval(b0, tb0, b1, tb1, t1);

  const Point r0 = pa0 - pb0;
  const Point r1 = pa1 - pb1;
  const Point rv = r1 - r0;
  const double a = dot(rv, rv);
  double best_t = t0;
  double best_d2 = dot(r0, r0);
  const double end_d2 = dot(r1, r1);
  if (end_d2 < best_d2) {
    best_d2 = end_d2;
    best_t = t1;
  }
  if (a > 0.0) {
    const double u = std::clamp(-dot(r0, rv) / a, 0.0, 1.0);
    const Point rm = r0 + u * rv;
    const double d2 = dot(rm, rm);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_t = t0 + u * (t1 - t0);
    }
  }
  return {std::sqrt(best_d2), best_t};
}

std::optional<std::pair<double, double>> proximity_window(Point p, double t0,
                                                          Point q, double t1,
                                                          Point center,
                                                          double radius) {
  const double dt = t1 - t0;
  const Point r0 = p - center;
  if (dt <= 0.0 || (p.x == q.x && p.y == q.y)) {
    if (norm(r0) < radius) return std::make_pair(t0, t1);
    return std::nullopt;
  }
  const Point v = {(q.x - p.x) / dt, (q.y - p.y) / dt};
  // |r0 + v s|^2 = radius^2 with s = t - t0.
  const double a = dot(v, v);
  const double b = 2.0 * dot(r0, v);
  const double c = dot(r0, r0) - radius * radius;
  const double disc = b * b - 4.0 * a * c;
  if (disc <= 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  // Numerically stable root pair.
  const double q0 = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  double s1 = q0 / a;
  double s2 = (q0 != 0.0) ? c / q0 : s1;
  if (s1 > s2) std::swap(s1, s2);
  const double lo = std::max(t0 + s1, t0);
  const double hi = std::min(t0 + s2, t1);
  if (lo >= hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

}  // namespace mapf
