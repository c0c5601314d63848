#include "mapf/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace mapf {

GridMap::GridMap(int width, int height, std::vector<uint8_t> blocked)
    : width_(width), height_(height), blocked_(std::move(blocked)) {
  if (width_ <= 0 || height_ <= 0)
    throw std::domain_error("grid dimensions must be positive");
  if (blocked_.size() != static_cast<size_t>(width_) * height_)
    throw std::domain_error("grid body size does not match dimensions");
}

size_t GridMap::blocked_count() const {
  return static_cast<size_t>(
      std::count(blocked_.begin(), blocked_.end(), uint8_t{1}));
}

bool is_legal_move(const GridMap& map, CellCoord from, CellCoord to,
                   Connectivity conn, bool allow_corner_cutting) {
  if (!map.passable(from) || !map.passable(to)) return false;
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  if (std::abs(dx) > 1 || std::abs(dy) > 1) return false;
  if (dx == 0 && dy == 0) return true;
  if (dx != 0 && dy != 0) {
    if (conn != Connectivity::Eight) return false;
    if (!allow_corner_cutting &&
        (!map.passable({from.x + dx, from.y}) ||
         !map.passable({from.x, from.y + dy})))
      return false;
  }
  return true;
}

void neighbors_into(const GridMap& map, CellCoord cell, Connectivity conn,
                    bool allow_corner_cutting, std::vector<CellCoord>& out) {
  if (!map.passable(cell))
    throw std::domain_error("neighbors() requires a passable cell");
  out.clear();
  out.push_back(cell);
  static constexpr int kCardinal[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  static constexpr int kDiagonal[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (auto [dx, dy] : kCardinal) {
    const CellCoord n{cell.x + dx, cell.y + dy};
    if (map.passable(n)) out.push_back(n);
  }
  if (conn != Connectivity::Eight) return;
  for (auto [dx, dy] : kDiagonal) {
    const CellCoord n{cell.x + dx, cell.y + dy};
    if (!map.passable(n)) continue;
    if (!allow_corner_cutting && (!map.passable({cell.x + dx, cell.y}) ||
                                  !map.passable({cell.x, cell.y + dy})))
      continue;
    out.push_back(n);
  }
}

std::vector<CellCoord> neighbors(const GridMap& map, CellCoord cell,
                                 Connectivity conn,
                                 bool allow_corner_cutting) {
  std::vector<CellCoord> out;
  neighbors_into(map, cell, conn, allow_corner_cutting, out);
  return out;
}

double manhattan_distance(CellCoord a, CellCoord b) {
  return static_cast<double>(std::abs(a.x - b.x) + std::abs(a.y - b.y));
}

double octile_distance(CellCoord a, CellCoord b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  const int m = std::min(dx, dy);
  const int k = std::max(dx, dy) - m;
  return static_cast<double>(m) * 1.4142135623730951 + static_cast<double>(k);
}

int chebyshev_distance(CellCoord a, CellCoord b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

DistanceField distance_field(const GridMap& map, CellCoord goal,
                             Connectivity conn, DistanceMetric metric,
                             bool allow_corner_cutting) {
  if (!map.passable(goal))
    throw std::domain_error("distance_field goal must be a passable cell");

  DistanceField f;
  f.goal_ = goal;
  f.conn_ = conn;
  f.metric_ = metric;
  f.width_ = map.width();
  f.height_ = map.height();
  const size_t n = map.cell_count();
  f.diag_.assign(n, 0);
  f.card_.assign(n, DistanceField::kUnreached);

  std::vector<CellCoord> nbuf;
  const size_t goal_idx = map.index(goal);

  if (metric == DistanceMetric::Steps) {
    // Unit edge costs: plain breadth-first search.
    std::queue<size_t> open;
    f.card_[goal_idx] = 0;
    open.push(goal_idx);
    while (!open.empty()) {
      const size_t cur = open.front();
      open.pop();
      const CellCoord c = map.cell_at(cur);
      neighbors_into(map, c, conn, allow_corner_cutting, nbuf);
      for (CellCoord nb : nbuf) {
        const size_t ni = map.index(nb);
        if (ni == cur || f.card_[ni] != DistanceField::kUnreached) continue;
        const bool diagonal = nb.x != c.x && nb.y != c.y;
        f.diag_[ni] = f.diag_[cur] + (diagonal ? 1 : 0);
        f.card_[ni] = f.card_[cur] + (diagonal ? 0 : 1);
        open.push(ni);
      }
    }
    return f;
  }

  // Weighted case: Dijkstra over (diag, card) step counts with cost
  // diag * sqrt(2) + card. Ties cannot occur between distinct count pairs at
  // benchmark scale, so the settled counts are canonical.
  const auto cost = [](uint32_t d, uint32_t k) {
    return static_cast<double>(d) * 1.4142135623730951 +
           static_cast<double>(k);
  };
  struct Entry {
    double dist;
    uint32_t diag;
    uint32_t card;
    uint32_t idx;
    bool operator>(const Entry& o) const {
      if (dist != o.dist) return dist > o.dist;
      return idx > o.idx;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
  std::vector<uint8_t> settled(n, 0);
  f.card_[goal_idx] = 0;
  open.push({0.0, 0, 0, static_cast<uint32_t>(goal_idx)});
  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    if (settled[e.idx]) continue;
    settled[e.idx] = 1;
    f.diag_[e.idx] = static_cast<uint16_t>(e.diag);
    f.card_[e.idx] = static_cast<uint16_t>(e.card);
    const CellCoord c = map.cell_at(e.idx);
    neighbors_into(map, c, conn, allow_corner_cutting, nbuf);
    for (CellCoord nb : nbuf) {
      const size_t ni = map.index(nb);
      if (ni == e.idx || settled[ni]) continue;
      const bool diagonal = nb.x != c.x && nb.y != c.y;
      const uint32_t nd = e.diag + (diagonal ? 1 : 0);
      const uint32_t nk = e.card + (diagonal ? 0 : 1);
      if (nd >= DistanceField::kUnreached || nk >= DistanceField::kUnreached)
        throw std::domain_error("distance_field path length overflow");
      open.push({cost(nd, nk), nd, nk, static_cast<uint32_t>(ni)});
    }
  }
  // Cells never settled keep the unreached sentinel; clear stale diag counts.
  for (size_t i = 0; i < n; ++i)
    if (!settled[i]) {
      f.diag_[i] = 0;
      f.card_[i] = DistanceField::kUnreached;
    }
  return f;
}

}  // namespace mapf
