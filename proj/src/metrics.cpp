#include "mapf/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace mapf {

double total_arclength(std::span<const TimedPath> paths) {
  double total = 0.0;
  for (const TimedPath& p : paths) total += p.arclength();
  return total;
}

double reduction(double raw, double smoothed) {
  if (raw <= 0.0) throw std::domain_error("reduction requires raw > 0");
  return 100.0 * (raw - smoothed) / raw;
}

double makespan(std::span<const TimedPath> paths) {
  double m = 0.0;
  for (const TimedPath& p : paths)
    if (!p.pts.empty()) m = std::max(m, p.end_time());
  return m;
}

}  // namespace mapf
