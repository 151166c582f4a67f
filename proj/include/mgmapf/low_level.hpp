#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <queue>
#include <tuple>
#include <vector>

#include "grid_map.hpp"
#include "tis_forest.hpp"
#include "types.hpp"

namespace mgmapf {

// Static unit-weight distances from each goal of one agent to every vertex.
// Built once per agent; constraints never change these.
class DistanceTable {
 public:
  DistanceTable() = default;
  DistanceTable(const GridMap& g, const std::vector<VertexId>& goals) : goals_(goals) {
    dist_.reserve(goals.size());
    for (VertexId gv : goals) dist_.push_back(bfs_distances(g, gv));
  }

  int goal_count() const { return static_cast<int>(goals_.size()); }
  VertexId goal_vertex(int gi) const { return goals_[gi]; }
  int dist(int gi, VertexId v) const { return dist_[gi][v]; }
  int goal_dist(int gi, int gj) const { return dist_[gi][goals_[gj]]; }
  const std::vector<int>& row(int gi) const { return dist_[gi]; }

 private:
  std::vector<VertexId> goals_;
  std::vector<std::vector<int>> dist_;
};

// Weight of a minimum spanning tree over {from} and the given goals, using
// static distances. Lower-bounds the remaining travel of any plan that still
// has to stand on every one of those goals. kUnreachable when disconnected.
inline int mst_cost(const DistanceTable& D, VertexId from, const std::vector<int>& goal_idx) {
  if (goal_idx.empty()) return 0;
  const int k = static_cast<int>(goal_idx.size());
  auto w = [](int d) { return is_reachable(d) ? d : kTimeInf; };

  std::vector<int> best(k);  // cheapest hookup of each pending goal to the tree
  for (int i = 0; i < k; ++i) best[i] = w(D.dist(goal_idx[i], from));
  std::vector<char> used(k, 0);
  long long total = 0;
  for (int round = 0; round < k; ++round) {
    int pick = -1;
    for (int i = 0; i < k; ++i) {
      if (!used[i] && (pick < 0 || best[i] < best[pick])) pick = i;
    }
    if (best[pick] >= kTimeInf) return kUnreachable;
    used[pick] = 1;
    total += best[pick];
    for (int i = 0; i < k; ++i) {
      if (!used[i]) best[i] = std::min(best[i], w(D.goal_dist(goal_idx[pick], goal_idx[i])));
    }
  }
  return static_cast<int>(total);
}

// Identity of one goal safe interval: goal index within the agent's task and
// interval index within that goal's safe-interval list.
struct GsiRef {
  int goal = -1;
  int si = -1;
};

// Candidate target intervals from a visited-set. Ordinary goals offer every
// interval; a goal that would complete the set only offers its last (open)
// interval, because the agent parks there and must stay safe forever.
template <typename Engine>
std::vector<GsiRef> get_all_potential_gsi(const Engine& eng, unsigned mask) {
  const unsigned full = (1u << eng.goal_count()) - 1u;
  std::vector<GsiRef> out;
  for (int gi = 0; gi < eng.goal_count(); ++gi) {
    if (mask & (1u << gi)) continue;
    if ((mask | (1u << gi)) == full) {
      out.push_back({gi, eng.gsi_count(gi) - 1});
    } else {
      for (int si = 0; si < eng.gsi_count(gi); ++si) out.push_back({gi, si});
    }
  }
  return out;
}

// Transfer engine backed by a prebuilt tree forest: every query is a lookup.
class ForestEngine {
 public:
  explicit ForestEngine(const TisForest& f) : forest_(&f) {}

  int goal_count() const { return forest_->goal_count(); }
  VertexId goal_vertex(int gi) const { return forest_->goal_vertex(gi); }
  int gsi_count(int gi) const { return forest_->gsi_count(gi); }
  const TimeInterval& gsi(int gi, int si) const { return forest_->gsi(gi, si); }

  int transfer_length(VertexId from, Time t, int gi, int si) const {
    return forest_->tree(gi, si).query_length(from, t);
  }
  std::vector<VertexId> transfer_path(VertexId from, Time t, int gi, int si) const {
    return forest_->tree(gi, si).extract_path(from, t);
  }

 private:
  const TisForest* forest_;
};

struct LowLevelResult {
  bool found = false;
  Time cost = -1;               // completion time = arrival at the last goal
  std::vector<VertexId> path;   // positions at t = 0..cost; parked afterwards
  std::uint64_t expansions = 0;
};

// Best-first search over (visited-set, goal interval) states. Arrival time is
// the g-value; the MST of the unvisited goals is the heuristic. Within one
// interval an earlier arrival can wait its way to any later departure, so
// keeping only the minimum arrival per (visited-set, interval) is lossless.
template <typename Engine>
LowLevelResult low_level_search(const Engine& eng, const DistanceTable& D, VertexId start) {
  const int n = eng.goal_count();
  if (n <= 0 || n > 20) throw ValidationError("low level: goal count out of range");
  const unsigned full = (1u << n) - 1u;

  struct State {
    unsigned mask = 0;
    int gi = -1;  // interval identity; -1 on the start state
    int si = -1;
    VertexId v = -1;
    Time g = 0;
    int parent = -1;
  };
  std::vector<State> states;
  states.push_back({0u, -1, -1, start, 0, -1});

  // dedup key: (visited-set, vertex, interval lo); value: state id with min g
  using Key = std::tuple<unsigned, VertexId, Time>;
  struct Slot {
    int id = -1;
    bool closed = false;
  };
  std::map<Key, Slot> seen;
  seen[{0u, start, -1}] = {0, false};

  using QItem = std::tuple<int, int, unsigned, VertexId, Time, int>;  // f, -g, mask, v, lo, id
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> open;

  auto heuristic = [&](unsigned mask, VertexId v) {
    std::vector<int> pending;
    for (int gi = 0; gi < n; ++gi) {
      if (!(mask & (1u << gi))) pending.push_back(gi);
    }
    return mst_cost(D, v, pending);
  };

  {
    int h0 = heuristic(0u, start);
    if (!is_reachable(h0)) return {};
    open.push({h0, 0, 0u, start, -1, 0});
  }

  LowLevelResult res;
  int goal_state = -1;
  while (!open.empty()) {
    auto [f, neg_g, mask, v, lo, id] = open.top();
    open.pop();
    Key key{mask, v, lo};
    auto& slot = seen.at(key);
    if (slot.id != id) continue;  // superseded by a cheaper arrival
    if (slot.closed) continue;
    slot.closed = true;
    res.expansions += 1;

    const State cur = states[id];
    if (cur.mask == full) {
      goal_state = id;
      break;
    }

    for (const GsiRef& ref : get_all_potential_gsi(eng, cur.mask)) {
      int len = eng.transfer_length(cur.v, cur.g, ref.goal, ref.si);
      if (!is_reachable(len)) continue;
      State nxt;
      nxt.mask = cur.mask | (1u << ref.goal);
      nxt.gi = ref.goal;
      nxt.si = ref.si;
      nxt.v = eng.goal_vertex(ref.goal);
      nxt.g = cur.g + len;
      nxt.parent = id;

      Key nkey{nxt.mask, nxt.v, eng.gsi(ref.goal, ref.si).lo};
      auto it = seen.find(nkey);
      if (it != seen.end()) {
        const State& old = states[it->second.id];
        if (old.g <= nxt.g) continue;
        if (it->second.closed) {
          // the MST heuristic is consistent, so a settled interval state can
          // never be rediscovered cheaper
          throw InternalError("low level: closed state reached with smaller arrival");
        }
      }
      int h = heuristic(nxt.mask, nxt.v);
      if (!is_reachable(h)) continue;
      int nid = static_cast<int>(states.size());
      states.push_back(nxt);
      seen[nkey] = {nid, false};
      open.push({nxt.g + h, -nxt.g, nxt.mask, nxt.v, eng.gsi(ref.goal, ref.si).lo, nid});
    }
  }

  if (goal_state < 0) return res;

  // stitch the transfer legs back together; junction vertices appear once
  std::vector<int> chain;
  for (int s = goal_state; s >= 0; s = states[s].parent) chain.push_back(s);
  std::reverse(chain.begin(), chain.end());

  res.found = true;
  res.cost = states[goal_state].g;
  res.path.push_back(start);
  for (size_t k = 1; k < chain.size(); ++k) {
    const State& a = states[chain[k - 1]];
    const State& b = states[chain[k]];
    std::vector<VertexId> leg = eng.transfer_path(a.v, a.g, b.gi, b.si);
    if (static_cast<Time>(leg.size()) != b.g - a.g + 1 || leg.front() != a.v ||
        leg.back() != b.v) {
      throw InternalError("low level: transfer leg does not match its arrival state");
    }
    res.path.insert(res.path.end(), leg.begin() + 1, leg.end());
  }
  if (static_cast<Time>(res.path.size()) != res.cost + 1) {
    throw InternalError("low level: stitched path length disagrees with cost");
  }
  return res;
}

}  // namespace mgmapf
