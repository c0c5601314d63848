/*
 * timed_path.hpp
 *
 * Continuous trajectory: waypoints at strictly increasing times with linear
 * interpolation between them. Outside its time span the path is stationary
 * at the nearest endpoint.
 */
#pragma once

#include <vector>

#include "mapf/geometry.hpp"

namespace mapf {

struct TimedWaypoint {
  double t = 0.0;
  Point p;
};

struct TimedPath {
  std::vector<TimedWaypoint> pts;

  double start_time() const { return pts.front().t; }
  double end_time() const { return pts.back().t; }

  Point position_at(double t) const;
  double arclength() const;

  // Index of the linear piece [pts[i], pts[i+1]] containing time t,
  // clamped to the valid range.
  size_t piece_at(double t) const;
};

}  // namespace mapf
