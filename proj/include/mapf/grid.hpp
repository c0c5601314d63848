/*
 * grid.hpp
 *
 * Occupancy grid, neighbor relation and goal distance fields.
 *
 * Connectivity is 4 (von Neumann) or 8 (Moore). Diagonal steps may not cut
 * corners: a diagonal move is legal only when both flanking cardinal cells
 * are passable. The flag is configurable and corner cutting is forbidden by
 * default everywhere.
 */
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mapf/geometry.hpp"

namespace mapf {

enum class Connectivity { Four = 4, Eight = 8 };

class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, std::vector<uint8_t> blocked);

  int width() const { return width_; }
  int height() const { return height_; }
  size_t cell_count() const { return blocked_.size(); }

  bool in_bounds(CellCoord c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  // Out-of-bounds coordinates are impassable.
  bool passable(CellCoord c) const {
    return in_bounds(c) && blocked_[index(c)] == 0;
  }
  bool blocked(CellCoord c) const { return !passable(c); }

  size_t index(CellCoord c) const {
    return static_cast<size_t>(c.y) * width_ + c.x;
  }
  CellCoord cell_at(size_t index) const {
    return {static_cast<int>(index % width_), static_cast<int>(index / width_)};
  }

  size_t blocked_count() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> blocked_;
};

// One step from `from` to `to`: wait, cardinal, or (8-connected) diagonal
// subject to the corner rule. Both endpoints must be passable.
bool is_legal_move(const GridMap& map, CellCoord from, CellCoord to,
                   Connectivity conn, bool allow_corner_cutting = false);

// Candidate cells reachable in one step from `cell`, the cell itself first
// (the wait move). `cell` must be passable; throws std::domain_error
// otherwise.
std::vector<CellCoord> neighbors(const GridMap& map, CellCoord cell,
                                 Connectivity conn,
                                 bool allow_corner_cutting = false);
void neighbors_into(const GridMap& map, CellCoord cell, Connectivity conn,
                    bool allow_corner_cutting, std::vector<CellCoord>& out);

// Cost model for distance fields. Euclidean charges sqrt(2) per diagonal
// step; Steps charges every move one unit (the planner's default candidate
// ordering, which keeps per-step timing and path length decoupled).
enum class DistanceMetric { Euclidean, Steps };

double manhattan_distance(CellCoord a, CellCoord b);
double octile_distance(CellCoord a, CellCoord b);
int chebyshev_distance(CellCoord a, CellCoord b);

/*
 * Distances from every passable cell to a fixed goal under the neighbor
 * relation above. Stored as (diagonal, cardinal) step counts of an optimal
 * path so Euclidean values reproduce the closed-form expression
 * m * sqrt(2) + k exactly. Unreachable cells report +infinity.
 */
class DistanceField {
 public:
  DistanceField() = default;

  double at(CellCoord c) const {
    if (!map_valid(c)) return std::numeric_limits<double>::infinity();
    const size_t i = static_cast<size_t>(c.y) * width_ + c.x;
    if (card_[i] == kUnreached) return std::numeric_limits<double>::infinity();
    if (metric_ == DistanceMetric::Steps)
      return static_cast<double>(diag_[i]) + static_cast<double>(card_[i]);
    return static_cast<double>(diag_[i]) * kSqrt2 +
           static_cast<double>(card_[i]);
  }
  bool reachable(CellCoord c) const {
    return map_valid(c) &&
           card_[static_cast<size_t>(c.y) * width_ + c.x] != kUnreached;
  }

  CellCoord goal() const { return goal_; }
  Connectivity connectivity() const { return conn_; }
  DistanceMetric metric() const { return metric_; }

  static constexpr uint16_t kUnreached = 0xffff;

 private:
  friend DistanceField distance_field(const GridMap&, CellCoord, Connectivity,
                                      DistanceMetric, bool);
  bool map_valid(CellCoord c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  static constexpr double kSqrt2 = 1.4142135623730951;

  CellCoord goal_{};
  Connectivity conn_ = Connectivity::Eight;
  DistanceMetric metric_ = DistanceMetric::Euclidean;
  int width_ = 0;
  int height_ = 0;
  std::vector<uint16_t> diag_;
  std::vector<uint16_t> card_;
};

// Uniform-cost search outward from `goal`. Throws std::domain_error when the
// goal cell is blocked or out of bounds.
DistanceField distance_field(const GridMap& map, CellCoord goal,
                             Connectivity conn,
                             DistanceMetric metric = DistanceMetric::Euclidean,
                             bool allow_corner_cutting = false);

}  // namespace mapf
