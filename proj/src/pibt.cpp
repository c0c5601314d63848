#include "mapf/pibt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mapf {

namespace {

constexpr int32_t kNoAgent = -1;

double uniform01(std::mt19937& rng) {
  return static_cast<double>(rng()) * (1.0 / 4294967296.0);
}

// Per-step planning state shared by the recursive calls.
struct StepContext {
  const GridMap& map;
  const Config& q_from;
  const PriorityState& priorities;
  const std::vector<DistanceField>& fields;
  Connectivity conn;
  bool allow_corner_cutting;
  std::mt19937& rng;

  Config q_to;
  std::vector<uint8_t> decided;
  std::vector<int32_t> occupied_now;
  std::vector<int32_t> occupied_next;

  StepContext(const GridMap& m, const Config& from, const PriorityState& pr,
              const std::vector<DistanceField>& f, Connectivity c, bool cut,
              std::mt19937& r)
      : map(m),
        q_from(from),
        priorities(pr),
        fields(f),
        conn(c),
        allow_corner_cutting(cut),
        rng(r),
        q_to(from.size()),
        decided(from.size(), 0),
        occupied_now(m.cell_count(), kNoAgent),
        occupied_next(m.cell_count(), kNoAgent) {
    for (size_t i = 0; i < from.size(); ++i)
      occupied_now[m.index(from[i])] = static_cast<int32_t>(i);
  }

  // A decided agent already traverses the crossing diagonal of the square
  // swept by the move from -> to.
  bool crossing_conflict(CellCoord from, CellCoord to) const {
    const int dx = to.x - from.x;
    const int dy = to.y - from.y;
    if (dx == 0 || dy == 0) return false;
    const CellCoord f1{from.x + dx, from.y};
    const CellCoord f2{from.x, from.y + dy};
    const auto decided_move = [&](CellCoord a, CellCoord b) {
      if (!map.in_bounds(a)) return false;
      const int32_t j = occupied_now[map.index(a)];
      return j != kNoAgent && decided[j] && q_to[j] == b;
    };
    return decided_move(f1, f2) || decided_move(f2, f1);
  }

  bool plan_agent(int i) {
    struct Candidate {
      CellCoord cell;
      double key;
      double tie;
    };
    Candidate cand[9];
    int n = 0;

    const CellCoord here = q_from[i];
    const DistanceField& field = fields[i];
    static thread_local std::vector<CellCoord> nbuf;
    neighbors_into(map, here, conn, allow_corner_cutting, nbuf);
    for (CellCoord c : nbuf) cand[n++] = {c, field.at(c), uniform01(rng)};
    std::sort(cand, cand + n, [](const Candidate& a, const Candidate& b) {
      if (a.key != b.key) return a.key < b.key;
      return a.tie < b.tie;
    });

    for (int k = 0; k < n; ++k) {
      const CellCoord u = cand[k].cell;
      const size_t ui = map.index(u);
      if (occupied_next[ui] != kNoAgent) continue;
      const int32_t j = occupied_now[ui];
      if (j != kNoAgent && j != i && decided[j] && q_to[j] == here) continue;
      if (crossing_conflict(here, u)) continue;

      // The tentative reservation also marks this agent decided, which
      // keeps descendants from re-entering an in-stack agent and lets a
      // pushed chain close rotations through this cell.
      occupied_next[ui] = i;
      q_to[i] = u;
      decided[i] = 1;

      if (j != kNoAgent && j != i && !decided[j] && !plan_agent(j)) {
        // The pushed agent stayed put and re-reserved u; fall through to
        // the next candidate.
        continue;
      }
      return true;
    }

    // No candidate worked: stay. The reservation overwrites a parent's
    // tentative claim on this cell.
    occupied_next[map.index(here)] = i;
    q_to[i] = here;
    decided[i] = 1;
    return false;
  }
};

int auto_horizon(const std::vector<DistanceField>& fields,
                 const Scenario& scenario) {
  double max_d = 0.0;
  for (size_t i = 0; i < scenario.starts.size(); ++i)
    max_d = std::max(max_d, fields[i].at(scenario.starts[i]));
  const double h = std::ceil(10.0 * max_d);
  return static_cast<int>(std::min(h, 10000.0));
}

}  // namespace

PriorityState make_priorities(size_t agents, uint32_t seed) {
  PriorityState p;
  p.base.assign(agents, 0);
  p.tiebreak.resize(agents);
  std::vector<size_t> perm(agents);
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::mt19937 rng(seed ^ 0x9e3779b9u);
  for (size_t i = agents; i > 1; --i)
    std::swap(perm[i - 1], perm[rng() % i]);
  for (size_t i = 0; i < agents; ++i)
    p.tiebreak[i] = static_cast<double>(perm[i] + 1) /
                    static_cast<double>(agents + 1);
  return p;
}

void update_priorities(PriorityState& p, const Config& current,
                       const std::vector<CellCoord>& goals) {
  for (size_t i = 0; i < goals.size(); ++i)
    p.base[i] = current[i] == goals[i] ? 0 : p.base[i] + 1;
}

bool diagonal_crossing(CellCoord a_from, CellCoord a_to, CellCoord b_from,
                       CellCoord b_to) {
  const int adx = a_to.x - a_from.x;
  const int ady = a_to.y - a_from.y;
  const int bdx = b_to.x - b_from.x;
  const int bdy = b_to.y - b_from.y;
  if (adx == 0 || ady == 0 || bdx == 0 || bdy == 0) return false;
  const CellCoord f1{a_from.x + adx, a_from.y};
  const CellCoord f2{a_from.x, a_from.y + ady};
  return (b_from == f1 && b_to == f2) || (b_from == f2 && b_to == f1);
}

bool move_valid(const GridMap& map, const Config& from, const Config& to,
                Connectivity conn, bool allow_corner_cutting) {
  if (from.size() != to.size())
    throw std::domain_error("move_valid configs must have equal size");
  const size_t n = from.size();
  for (size_t i = 0; i < n; ++i)
    if (!is_legal_move(map, from[i], to[i], conn, allow_corner_cutting))
      return false;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if (to[i] == to[j]) return false;
      if (to[i] == from[j] && to[j] == from[i]) return false;
      if (conn == Connectivity::Eight &&
          diagonal_crossing(from[i], to[i], from[j], to[j]))
        return false;
    }
  return true;
}

Config pibt_step_impl(const GridMap& map, const Config& current,
                      const PriorityState& priorities,
                      const std::vector<DistanceField>& fields,
                      Connectivity conn, bool allow_corner_cutting,
                      std::mt19937& rng) {
  const size_t n = current.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return priorities.effective(a) > priorities.effective(b);
  });

  StepContext ctx(map, current, priorities, fields, conn,
                  allow_corner_cutting, rng);
  for (int i : order)
    if (!ctx.decided[i]) ctx.plan_agent(i);
  return ctx.q_to;
}

Config pibt_step(const GridMap& map, const Config& current,
                 const PriorityState& priorities,
                 const std::vector<DistanceField>& fields, Connectivity conn,
                 uint32_t rng_seed, bool allow_corner_cutting) {
  if (current.size() != fields.size() ||
      current.size() != priorities.base.size())
    throw std::domain_error("pibt_step argument sizes disagree");
  std::mt19937 rng(rng_seed);
  return pibt_step_impl(map, current, priorities, fields, conn,
                        allow_corner_cutting, rng);
}

DiscretePlan plan(const GridMap& map, const Scenario& scenario,
                  const PlanOptions& options) {
  const size_t n = scenario.agent_count();
  std::vector<DistanceField> fields(n);
  for (size_t i = 0; i < n; ++i)
    fields[i] = distance_field(map, scenario.goals[i], options.conn,
                               options.ordering, options.allow_corner_cutting);
  for (size_t i = 0; i < n; ++i) {
    if (!map.passable(scenario.starts[i]))
      throw ValidationError("agent " + std::to_string(i) +
                            " starts on a blocked cell");
    if (!std::isfinite(fields[i].at(scenario.starts[i])))
      throw ValidationError("agent " + std::to_string(i) +
                            " cannot reach its goal");
  }

  DiscretePlan out;
  out.goals = scenario.goals;
  out.configs.push_back(scenario.starts);

  const int horizon =
      options.horizon > 0 ? options.horizon : auto_horizon(fields, scenario);

  PriorityState priorities = make_priorities(n, options.seed);
  update_priorities(priorities, out.configs.back(), out.goals);
  std::mt19937 rng(options.seed);

  while (out.configs.back() != out.goals &&
         static_cast<int>(out.configs.size()) <= horizon) {
    Config next = pibt_step_impl(map, out.configs.back(), priorities, fields,
                                 options.conn, options.allow_corner_cutting,
                                 rng);
    out.configs.push_back(std::move(next));
    update_priorities(priorities, out.configs.back(), out.goals);
  }
  out.solved = out.configs.back() == out.goals;
  return out;
}

}  // namespace mapf
