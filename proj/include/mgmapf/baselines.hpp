#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "builtin_maps.hpp"
#include "cbs.hpp"
#include "constraints.hpp"
#include "grid_map.hpp"
#include "instance.hpp"
#include "low_level.hpp"
#include "solution.hpp"
#include "types.hpp"

namespace mgmapf {

enum class ArrivalRule {
  FirstArrival,  // stop at the first legal arrival
  FutureSafe,    // arrival must also have no vertex constraint later: the
                 // agent intends to park there forever
};

struct SpacetimeLeg {
  bool found = false;
  std::vector<VertexId> path;  // positions at t0..arrival
};

// Single-target spacetime A* under one agent's constraints. dist_to_target
// is a static BFS row from the target (admissible, consistent heuristic).
inline SpacetimeLeg spacetime_astar(const GridMap& g, const ConstraintSet& cons, AgentId a,
                                    VertexId from, Time t0, VertexId to,
                                    const std::vector<int>& dist_to_target,
                                    ArrivalRule rule, Time t_max) {
  SpacetimeLeg res;
  if (cons.vertex_blocked(a, from, t0)) return res;
  if (!is_reachable(dist_to_target[from])) return res;

  struct Visit {
    VertexId v;
    Time t;
    int parent;
  };
  std::vector<Visit> visits;
  std::set<std::pair<VertexId, Time>> closed;
  using QItem = std::tuple<Time, Time, VertexId, int>;  // f, -t, v, visit id
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> open;

  visits.push_back({from, t0, -1});
  open.push({t0 + dist_to_target[from], -t0, from, 0});
  while (!open.empty()) {
    auto [f, neg_t, v, id] = open.top();
    open.pop();
    Time t = -neg_t;
    if (!closed.insert({v, t}).second) continue;

    if (v == to &&
        (rule == ArrivalRule::FirstArrival ||
         !cons.has_vertex_constraint_at_or_after(a, to, t))) {
      for (int cur = id; cur >= 0; cur = visits[cur].parent) {
        res.path.push_back(visits[cur].v);
      }
      std::reverse(res.path.begin(), res.path.end());
      res.found = true;
      return res;
    }
    if (t >= t_max) continue;
    for (VertexId u : neighbors_with_wait(g, v)) {
      if (!is_move_safe(cons, a, v, u, t)) continue;
      if (closed.count({u, t + 1})) continue;
      if (!is_reachable(dist_to_target[u])) continue;
      visits.push_back({u, t + 1, id});
      open.push({t + 1 + dist_to_target[u], -(t + 1), u,
                 static_cast<int>(visits.size()) - 1});
    }
  }
  return res;
}

// Decoupled baseline planner: orders goal VERTICES, not goal intervals. Its
// middle level keeps only the earliest arrival per (visited-set, goal) pair,
// which merges arrivals that fall into different safe intervals — that is
// the documented source of suboptimality. Legs are planned one at a time;
// only the leg that completes the set must be future-safe, since the agent
// parks at its end.
class VertexOrderPlanner {
 public:
  struct AgentContext {};

  VertexOrderPlanner(const GridMap& g, const Instance& inst) : map_(&g), inst_(&inst) {
    dtables_.reserve(inst.agents.size());
    for (const auto& task : inst.agents) dtables_.emplace_back(g, task.goals);
  }

  AgentContext make_context(AgentId, const ConstraintSet&) const { return {}; }

  LowLevelResult plan(AgentId a, const ConstraintSet& cons, const AgentContext&) const {
    const auto& goals = inst_->agents[a].goals;
    const DistanceTable& D = dtables_[a];
    const int n = static_cast<int>(goals.size());
    const unsigned full = (1u << n) - 1u;
    const VertexId start = inst_->agents[a].start;
    const Time horizon = cons.max_time() + static_cast<Time>(map_->vertex_count()) *
                                               (static_cast<Time>(n) + 1);

    struct State {
      unsigned mask = 0;
      int gi = -1;
      VertexId v = -1;
      Time t = 0;
      int parent = -1;
      std::vector<VertexId> leg;  // from parent's position to here
    };
    std::vector<State> states;
    states.push_back({0u, -1, start, 0, -1, {}});

    // the deliberately lossy dedup: best arrival per (visited-set, goal)
    std::map<std::pair<unsigned, int>, std::pair<Time, int>> best;
    best[{0u, -1}] = {0, 0};

    auto heuristic = [&](unsigned mask, VertexId v) {
      std::vector<int> pending;
      for (int gi = 0; gi < n; ++gi) {
        if (!(mask & (1u << gi))) pending.push_back(gi);
      }
      return mst_cost(D, v, pending);
    };

    using QItem = std::tuple<int, Time, unsigned, int, int>;  // f, -t, mask, gi, id
    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> open;
    {
      int h0 = heuristic(0u, start);
      if (!is_reachable(h0)) return {};
      open.push({h0, 0, 0u, -1, 0});
    }

    LowLevelResult res;
    int goal_state = -1;
    while (!open.empty()) {
      auto [f, neg_t, mask, gi, id] = open.top();
      open.pop();
      auto bit = best.find({mask, gi});
      if (bit == best.end() || bit->second.second != id) continue;  // superseded
      res.expansions += 1;

      const Time t = states[id].t;
      const VertexId v = states[id].v;
      if (mask == full) {
        goal_state = id;
        break;
      }
      for (int gj = 0; gj < n; ++gj) {
        if (mask & (1u << gj)) continue;
        unsigned nmask = mask | (1u << gj);
        ArrivalRule rule =
            (nmask == full) ? ArrivalRule::FutureSafe : ArrivalRule::FirstArrival;
        SpacetimeLeg leg =
            spacetime_astar(*map_, cons, a, v, t, goals[gj], D.row(gj), rule, horizon);
        if (!leg.found) continue;
        Time arrival = t + static_cast<Time>(leg.path.size()) - 1;

        auto key = std::make_pair(nmask, gj);
        auto it = best.find(key);
        if (it != best.end() && it->second.first <= arrival) continue;
        int h = heuristic(nmask, goals[gj]);
        if (!is_reachable(h)) continue;
        State nxt;
        nxt.mask = nmask;
        nxt.gi = gj;
        nxt.v = goals[gj];
        nxt.t = arrival;
        nxt.parent = id;
        nxt.leg = std::move(leg.path);
        int nid = static_cast<int>(states.size());
        states.push_back(std::move(nxt));
        best[key] = {arrival, nid};
        open.push({arrival + h, -arrival, nmask, gj, nid});
      }
    }
    if (goal_state < 0) return res;

    std::vector<int> chain;
    for (int s = goal_state; s >= 0; s = states[s].parent) chain.push_back(s);
    std::reverse(chain.begin(), chain.end());
    res.found = true;
    res.cost = states[goal_state].t;
    res.path.push_back(start);
    for (size_t k = 1; k < chain.size(); ++k) {
      const auto& leg = states[chain[k]].leg;
      res.path.insert(res.path.end(), leg.begin() + 1, leg.end());
    }
    if (static_cast<Time>(res.path.size()) != res.cost + 1) {
      throw InternalError("vertex-order planner: stitched path length disagrees with cost");
    }
    return res;
  }

 private:
  const GridMap* map_;
  const Instance* inst_;
  std::vector<DistanceTable> dtables_;
};

// Coupled single-agent planner: plain A* over (vertex, time, visited-set)
// with no interval abstraction at all. Slow but easy to trust; serves as the
// optimality referee for the interval-based planners.
class CoupledPlanner {
 public:
  struct AgentContext {};

  CoupledPlanner(const GridMap& g, const Instance& inst) : map_(&g), inst_(&inst) {
    dtables_.reserve(inst.agents.size());
    for (const auto& task : inst.agents) dtables_.emplace_back(g, task.goals);
  }

  AgentContext make_context(AgentId, const ConstraintSet&) const { return {}; }

  LowLevelResult plan(AgentId a, const ConstraintSet& cons, const AgentContext&) const {
    const auto& goals = inst_->agents[a].goals;
    const DistanceTable& D = dtables_[a];
    const int n = static_cast<int>(goals.size());
    const unsigned full = (1u << n) - 1u;
    const VertexId start = inst_->agents[a].start;
    const Time horizon = cons.max_time() + static_cast<Time>(map_->vertex_count()) *
                                               (static_cast<Time>(n) + 1);

    auto goal_bit = [&](VertexId v) {
      for (int gi = 0; gi < n; ++gi) {
        if (goals[gi] == v) return 1u << gi;
      }
      return 0u;
    };
    auto heuristic = [&](unsigned mask, VertexId v) {
      std::vector<int> pending;
      for (int gi = 0; gi < n; ++gi) {
        if (!(mask & (1u << gi))) pending.push_back(gi);
      }
      return mst_cost(D, v, pending);
    };

    LowLevelResult res;
    if (cons.vertex_blocked(a, start, 0)) return res;

    struct Visit {
      VertexId v;
      Time t;
      unsigned mask;
      int parent;
    };
    std::vector<Visit> visits;
    std::set<std::tuple<VertexId, Time, unsigned>> closed;
    using QItem = std::tuple<Time, Time, unsigned, VertexId, int>;  // f, -t, mask, v, id
    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> open;

    unsigned mask0 = goal_bit(start);
    {
      int h0 = heuristic(mask0, start);
      if (!is_reachable(h0)) return res;
      visits.push_back({start, 0, mask0, -1});
      open.push({h0, 0, mask0, start, 0});
    }
    while (!open.empty()) {
      auto [f, neg_t, mask, v, id] = open.top();
      open.pop();
      Time t = -neg_t;
      if (!closed.insert({v, t, mask}).second) continue;
      res.expansions += 1;

      if (mask == full && goal_bit(v) != 0u &&
          !cons.has_vertex_constraint_at_or_after(a, v, t)) {
        res.found = true;
        res.cost = t;
        for (int cur = id; cur >= 0; cur = visits[cur].parent) {
          res.path.push_back(visits[cur].v);
        }
        std::reverse(res.path.begin(), res.path.end());
        return res;
      }
      if (t >= horizon) continue;
      for (VertexId u : neighbors_with_wait(*map_, v)) {
        if (!is_move_safe(cons, a, v, u, t)) continue;
        unsigned nmask = mask | goal_bit(u);
        if (closed.count({u, t + 1, nmask})) continue;
        int h = heuristic(nmask, u);
        if (!is_reachable(h)) continue;
        visits.push_back({u, t + 1, nmask, id});
        open.push({t + 1 + h, -(t + 1), nmask, u, static_cast<int>(visits.size()) - 1});
      }
    }
    return res;
  }

 private:
  const GridMap* map_;
  const Instance* inst_;
  std::vector<DistanceTable> dtables_;
};

inline SolveResult hcbs_solve(const GridMap& g, const Instance& inst,
                              const CbsBudget& budget = {}) {
  CbsSearch<VertexOrderPlanner> search(g, inst, VertexOrderPlanner(g, inst));
  return search.solve(budget);
}

inline SolveResult cbs_astar_solve(const GridMap& g, const Instance& inst,
                                   const CbsBudget& budget = {}) {
  CbsSearch<CoupledPlanner> search(g, inst, CoupledPlanner(g, inst));
  return search.solve(budget);
}

// Frozen two-agent corridor instance on the crowd_b map demonstrating why
// ordering goal VERTICES by earliest arrival is lossy. Both agents want the
// cul-de-sac cell (0,1). The cheapest joint plan (cost 20) has agent 0
// shuffle near its start and reach (0,1) at t=6 — two steps later than its
// earliest possible arrival — so agent 1 can slip through first; agent 0
// then continues to (4,2). A planner that only keeps the earliest arrival
// per goal vertex cannot express that deliberately late visit and pays 22.
// The gap is certified against the exhaustive joint oracle by tests.
inline GridMap case_study_map() { return load_builtin_map("crowd_b"); }

inline Instance case_study_builder() {
  GridMap g = case_study_map();
  Instance inst;
  inst.map_ref = "crowd_b";
  inst.agents.push_back({g.vertex_at(3, 0), {g.vertex_at(0, 1), g.vertex_at(4, 2)}});
  inst.agents.push_back({g.vertex_at(2, 2), {g.vertex_at(0, 1)}});
  return inst;
}

struct JointOracleResult {
  enum class Status { Ok, Infeasible, TooLarge };
  Status status = Status::Infeasible;
  long long soc = -1;
};

// Exhaustive joint-state Dijkstra over (positions, visited-sets, parked
// flags). Each tick costs one unit per agent that has not parked; an agent
// may park exactly when it stands on a goal with its set complete, and a
// parked agent never moves again but still occupies its vertex. Intended
// for tiny instances only: gives ground-truth optimal cost or a proof of
// infeasibility, refusing (TooLarge) past the state budget.
inline JointOracleResult joint_bfs_oracle(const GridMap& g, const Instance& inst,
                                          std::uint64_t max_states = 2000000) {
  JointOracleResult out;
  const int k = inst.num_agents();
  std::vector<std::vector<VertexId>> goals(k);
  for (int a = 0; a < k; ++a) {
    goals[a] = inst.agents[a].goals;
    if (goals[a].size() > 10) {
      out.status = JointOracleResult::Status::TooLarge;
      return out;
    }
  }
  auto goal_bit = [&](int a, VertexId v) {
    for (size_t gi = 0; gi < goals[a].size(); ++gi) {
      if (goals[a][gi] == v) return 1u << gi;
    }
    return 0u;
  };
  auto full_mask = [&](int a) { return (1u << goals[a].size()) - 1u; };

  // state layout: positions[k], masks[k], parked[k]
  using JointState = std::vector<int>;
  std::map<JointState, long long> dist;
  using QItem = std::pair<long long, JointState>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> pq;

  // seed: every combination of parking the agents that may park at t=0
  {
    JointState base(3 * k);
    for (int a = 0; a < k; ++a) {
      base[a] = inst.agents[a].start;
      base[k + a] = static_cast<int>(goal_bit(a, inst.agents[a].start));
      base[2 * k + a] = 0;
    }
    std::vector<JointState> seeds{base};
    for (int a = 0; a < k; ++a) {
      size_t cnt = seeds.size();
      for (size_t s = 0; s < cnt; ++s) {
        if (static_cast<unsigned>(seeds[s][k + a]) == full_mask(a)) {
          JointState parked = seeds[s];
          parked[2 * k + a] = 1;
          seeds.push_back(std::move(parked));
        }
      }
    }
    for (auto& s : seeds) {
      dist[s] = 0;
      pq.push({0, std::move(s)});
    }
  }

  while (!pq.empty()) {
    auto [d, s] = pq.top();
    pq.pop();
    auto it = dist.find(s);
    if (it == dist.end() || it->second < d) continue;

    bool all_parked = true;
    for (int a = 0; a < k; ++a) {
      if (!s[2 * k + a]) all_parked = false;
    }
    if (all_parked) {
      out.status = JointOracleResult::Status::Ok;
      out.soc = d;
      return out;
    }

    // enumerate one tick: parked agents stay; active agents move or wait and
    // may park on arrival when their set is complete there
    struct Choice {
      VertexId to;
      unsigned mask;
      int parked;
    };
    std::vector<std::vector<Choice>> options(k);
    long long tick_cost = 0;
    for (int a = 0; a < k; ++a) {
      if (s[2 * k + a]) {
        options[a].push_back({s[a], static_cast<unsigned>(s[k + a]), 1});
        continue;
      }
      tick_cost += 1;
      for (VertexId u : neighbors_with_wait(g, s[a])) {
        unsigned nmask = static_cast<unsigned>(s[k + a]) | goal_bit(a, u);
        options[a].push_back({u, nmask, 0});
        if (nmask == full_mask(a) && goal_bit(a, u) != 0u) {
          options[a].push_back({u, nmask, 1});
        }
      }
    }

    JointState nxt(3 * k);
    std::vector<int> pick(k, 0);
    while (true) {
      bool valid = true;
      for (int a = 0; a < k && valid; ++a) {
        const Choice& c = options[a][pick[a]];
        nxt[a] = c.to;
        nxt[k + a] = static_cast<int>(c.mask);
        nxt[2 * k + a] = c.parked;
        for (int b = 0; b < a; ++b) {
          if (nxt[b] == nxt[a]) valid = false;                      // vertex
          if (nxt[a] == s[b] && nxt[b] == s[a] && s[a] != nxt[a]) { // swap
            valid = false;
          }
        }
      }
      if (valid) {
        long long nd = d + tick_cost;
        auto dit = dist.find(nxt);
        if (dit == dist.end() || dit->second > nd) {
          if (dit == dist.end() && dist.size() >= max_states) {
            out.status = JointOracleResult::Status::TooLarge;
            return out;
          }
          dist[nxt] = nd;
          pq.push({nd, nxt});
        }
      }
      int a = k - 1;
      while (a >= 0 && pick[a] + 1 == static_cast<int>(options[a].size())) {
        pick[a] = 0;
        a -= 1;
      }
      if (a < 0) break;
      pick[a] += 1;
    }
  }
  out.status = JointOracleResult::Status::Infeasible;
  return out;
}

}  // namespace mgmapf
