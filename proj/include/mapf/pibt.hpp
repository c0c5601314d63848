/*
 * pibt.hpp
 *
 * Priority Inheritance with Backtracking over 4- or 8-connected grids.
 *
 * Each timestep the agents are planned in descending effective priority
 * (timesteps since the goal was last reached, plus a fixed distinct
 * tie-break). An agent tries its candidate moves sorted by goal distance
 * with a seeded random tie-break; a candidate occupied by an undecided
 * lower-priority agent forces that agent to plan first, and a failed
 * subtree makes the caller fall through to its next candidate. The wait
 * move is always available at the recursion root, so a step never fails
 * globally.
 */
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mapf/benchmark_io.hpp"
#include "mapf/grid.hpp"

namespace mapf {

using Config = std::vector<CellCoord>;

struct PriorityState {
  // base[i]: timesteps since agent i last reached its goal.
  std::vector<int> base;
  // Distinct values in [0, 1), fixed when planning starts.
  std::vector<double> tiebreak;
  double effective(size_t i) const { return base[i] + tiebreak[i]; }
};

PriorityState make_priorities(size_t agents, uint32_t seed);
void update_priorities(PriorityState& p, const Config& current,
                       const std::vector<CellCoord>& goals);

struct DiscretePlan {
  std::vector<Config> configs;  // configs[t], t = 0..t_max
  std::vector<CellCoord> goals;
  bool solved = false;
  int t_max() const { return static_cast<int>(configs.size()) - 1; }
  size_t agent_count() const { return goals.size(); }
};

/*
 * Joint validity of one synchronous step: target cells pairwise distinct,
 * no two agents exchange cells, no two agents traverse the two crossing
 * diagonals of one unit square, and every per-agent move is a legal
 * neighbor step on the map.
 */
bool move_valid(const GridMap& map, const Config& from, const Config& to,
                Connectivity conn, bool allow_corner_cutting = false);

// The two moves are diagonal traversals of the same unit square's two
// different diagonals.
bool diagonal_crossing(CellCoord a_from, CellCoord a_to, CellCoord b_from,
                       CellCoord b_to);

struct PlanOptions {
  Connectivity conn = Connectivity::Eight;
  // Candidate ordering cost model. Steps keeps all moves at unit cost,
  // Euclidean charges sqrt(2) per diagonal.
  DistanceMetric ordering = DistanceMetric::Steps;
  bool allow_corner_cutting = false;
  // 0 selects ten times the largest initial goal distance, capped at 10000.
  int horizon = 0;
  uint32_t seed = 0;
};

// One planning step for every agent. Deterministic in all arguments.
Config pibt_step(const GridMap& map, const Config& current,
                 const PriorityState& priorities,
                 const std::vector<DistanceField>& fields, Connectivity conn,
                 uint32_t rng_seed, bool allow_corner_cutting = false);

// Full run: distance fields, reachability validation, stepping until every
// agent sits on its goal or the horizon is exhausted. configs is truncated
// at the first all-at-goal timestep; solved reflects whether that happened.
DiscretePlan plan(const GridMap& map, const Scenario& scenario,
                  const PlanOptions& options = {});

}  // namespace mapf
