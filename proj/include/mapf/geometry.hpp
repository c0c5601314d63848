/*
 * geometry.hpp
 *
 * Continuous-space primitives on top of the unit grid. Cell (x, y) owns the
 * closed square [x, x+1] x [y, y+1]; its center sits at (x + 0.5, y + 0.5).
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace mapf {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point p) { return std::sqrt(dot(p, p)); }
inline double distance(Point a, Point b) { return norm(a - b); }

struct CellCoord {
  int x = 0;
  int y = 0;
  bool operator==(const CellCoord&) const = default;
  bool operator<(const CellCoord& o) const {
    return y != o.y ? y < o.y : x < o.x;
  }
};

inline Point cell_center(CellCoord c) {
  return {static_cast<double>(c.x) + 0.5, static_cast<double>(c.y) + 0.5};
}

/*
 * Every cell whose closed unit square the closed segment [p, q] touches.
 * Exact corner grazing counts as touching, so a segment through a lattice
 * corner reports all four cells sharing that corner. Results are unique,
 * unclipped (may lie outside any particular map), and in traversal order
 * of first touch.
 */
std::vector<CellCoord> supercover_cells(Point p, Point q);

/*
 * Time window during which the point moving linearly from p (at time t0) to
 * q (at time t1) is inside the closed square of `cell`. Closed interval;
 * empty optional when the square is never touched. Degenerate segments
 * (p == q) yield [t0, t1] iff the point lies in the square.
 */
std::optional<std::pair<double, double>> cell_entry_window(
    Point p, double t0, Point q, double t1, CellCoord cell);

/*
 * Minimum over [t0, t1] of |A(t) - B(t)| for two points moving linearly,
 * A from a0 at ta0 to a1 at ta1 (clamped outside its span) and likewise B.
 * Both spans must contain [t0, t1]. Returns {min distance, arg time}.
 */
std::pair<double, double> min_separation(Point a0, double ta0, Point a1,
                                         double ta1, Point b0, double tb0,
                                         Point b1, double tb1, double t0,
                                         double t1);

/*
 * Times within [t0, t1] at which the point moving linearly from p (at t0)
 * to q (at t1) is strictly within `radius` of `center`. Empty optional when
 * it never is. Used to accumulate blocked windows for safe intervals.
 */
std::optional<std::pair<double, double>> proximity_window(Point p, double t0,
                                                          Point q, double t1,
                                                          Point center,
                                                          double radius);

}  // namespace mapf
