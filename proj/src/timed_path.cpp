#include "mapf/timed_path.hpp"

#include <algorithm>

namespace mapf {

Point TimedPath::position_at(double t) const {
  if (pts.empty()) return {};
  if (t <= pts.front().t) return pts.front().p;
  if (t >= pts.back().t) return pts.back().p;
  const size_t i = piece_at(t);
  const TimedWaypoint& a = pts[i];
  const TimedWaypoint& b = pts[i + 1];
  const double u = (t - a.t) / (b.t - a.t);
  return a.p + u * (b.p - a.p);
}

double TimedPath::arclength() const {
  double total = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    total += distance(pts[i].p, pts[i + 1].p);
  return total;
}

size_t TimedPath::piece_at(double t) const {
  if (pts.size() < 2) return 0;
  const auto it = std::upper_bound(
      pts.begin(), pts.end(), t,
      [](double v, const TimedWaypoint& w) { return v < w.t; });
  size_t i = static_cast<size_t>(it - pts.begin());
  if (i == 0) return 0;
  i -= 1;
  return std::min(i, pts.size() - 2);
}

}  // namespace mapf
