#pragma once

#include <algorithm>
#include <queue>
#include <sstream>
#include <tuple>
#include <vector>

#include "constraints.hpp"
#include "grid_map.hpp"
#include "types.hpp"

namespace mgmapf {

// One node of a time-interval-space tree: a fragment of a safe interval at a
// vertex over which the remaining travel time to the tree's goal interval is
// uniform. Fragments at a vertex always tile its safe intervals exactly.
struct TisNode {
  VertexId v = -1;
  TimeInterval iv;
  int cost = kUnreachable;  // steps to goal arrival, waits included
  int parent = -1;          // node id one step closer to the goal; -1 at root
  bool retired = false;     // superseded by a split; kept for id stability
  bool popped = false;      // settled by the Dijkstra pass
};

// Departure times t from vertex u such that the move u -> pv (or a wait when
// u == pv) is legal and lands inside parent_iv at t+1. Returned as maximal
// intervals in ascending order.
inline std::vector<TimeInterval> compute_backward_B(const ConstraintSet& cons,
                                                    AgentId a, VertexId u, VertexId pv,
                                                    const TimeInterval& parent_iv) {
  Time wlo = std::max<Time>(0, parent_iv.lo - 1);
  Time whi = parent_iv.unbounded() ? kTimeInf : parent_iv.hi - 1;
  if (whi < wlo) return {};

  std::vector<TimeInterval> out;
  const std::vector<Time>* edge_ts = (u == pv) ? nullptr : cons.edge_times(a, u, pv);
  for (const TimeInterval& si : compute_safe_intervals(cons, a, u)) {
    Time lo = std::max(si.lo, wlo);
    Time hi = std::min(si.hi, whi);
    if (lo > hi) continue;
    Time cur = lo;
    if (edge_ts) {
      for (Time t : *edge_ts) {
        if (t < cur) continue;
        if (t > hi) break;
        if (t > cur) out.push_back({cur, t - 1});
        cur = t + 1;
      }
    }
    if (cur <= hi) out.push_back({cur, hi});
  }
  return out;
}

// Backward shortest-path tree over (safe interval fragment, vertex) states,
// rooted at one safe interval of a goal vertex. After build, query_length
// answers "departing v at time t, how many steps to stand on the goal inside
// the root interval" for every safe (v, t) at once.
class TisTree {
 public:
  TisTree() = default;
  TisTree(const GridMap& g, const ConstraintSet& cons, AgentId agent, VertexId goal,
          const TimeInterval& gsi) {
    build(g, cons, agent, goal, gsi);
  }

  VertexId goal_vertex() const { return goal_; }
  const TimeInterval& gsi() const { return gsi_; }

  // Live node covering (v, t), or -1 when t is constrained at v.
  int locate(VertexId v, Time t) const {
    const auto& lst = at_vertex_[v];
    int lo = 0, hi = static_cast<int>(lst.size()) - 1, found = -1;
    while (lo <= hi) {
      int mid = (lo + hi) / 2;
      if (nodes_[lst[mid]].iv.lo <= t) {
        found = mid;
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    if (found < 0) return -1;
    int id = lst[found];
    return nodes_[id].iv.contains(t) ? id : -1;
  }

  // Steps (waits included) from (v, t) to an arrival inside the goal interval;
  // kUnreachable when no such trajectory exists or t itself is unsafe at v.
  int query_length(VertexId v, Time t) const {
    int id = locate(v, t);
    return id < 0 ? kUnreachable : nodes_[id].cost;
  }

  // Vertex sequence from (v, t) to the goal arrival, one entry per time step
  // starting with v itself. Empty when unreachable.
  std::vector<VertexId> extract_path(VertexId v, Time t) const {
    int id = locate(v, t);
    if (id < 0 || !is_reachable(nodes_[id].cost)) return {};
    const int steps = nodes_[id].cost;
    std::vector<VertexId> path;
    path.reserve(steps + 1);
    int cur = id;
    path.push_back(nodes_[cur].v);
    for (int k = 0; k < steps; ++k) {
      cur = nodes_[cur].parent;
      if (cur < 0) throw InternalError("tis tree: broken parent chain");
      path.push_back(nodes_[cur].v);
    }
    if (nodes_[cur].cost != 0 || nodes_[cur].v != goal_ || !gsi_.contains(t + steps)) {
      throw InternalError("tis tree: parent chain did not end inside the goal interval");
    }
    return path;
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const TisNode& node(int id) const { return nodes_[id]; }
  int live_node_count() const {
    int n = 0;
    for (const auto& lst : at_vertex_) n += static_cast<int>(lst.size());
    return n;
  }
  const std::vector<int>& nodes_at(VertexId v) const { return at_vertex_[v]; }

  // Deterministic debug dump of the live fragments (hi -1 means unbounded).
  std::string dump_json() const {
    std::ostringstream out;
    out << "{\"goal\": " << goal_ << ", \"gsi\": [" << gsi_.lo << ", "
        << (gsi_.unbounded() ? -1 : gsi_.hi) << "], \"nodes\": [";
    bool first = true;
    for (const auto& lst : at_vertex_) {
      for (int id : lst) {
        const TisNode& n = nodes_[id];
        if (!first) out << ", ";
        first = false;
        out << "{\"v\": " << n.v << ", \"lo\": " << n.iv.lo << ", \"hi\": "
            << (n.iv.unbounded() ? -1 : n.iv.hi) << ", \"cost\": " << n.cost
            << ", \"parent\": " << n.parent << "}";
      }
    }
    out << "]}";
    return out.str();
  }

 private:
  // min-heap keyed (cost, vertex, interval lo, id) for a stable expansion order
  using QItem = std::tuple<int, VertexId, Time, int>;
  using MinQueue = std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>>;

  void build(const GridMap& g, const ConstraintSet& cons, AgentId agent, VertexId goal,
             const TimeInterval& gsi) {
    goal_ = goal;
    gsi_ = gsi;
    nodes_.clear();
    at_vertex_.assign(g.vertex_count(), {});

    int root = -1;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (const TimeInterval& si : compute_safe_intervals(cons, agent, v)) {
        TisNode nd;
        nd.v = v;
        nd.iv = si;
        if (v == goal && si == gsi) {
          nd.cost = 0;
          root = static_cast<int>(nodes_.size());
        }
        at_vertex_[v].push_back(static_cast<int>(nodes_.size()));
        nodes_.push_back(nd);
      }
    }
    if (root < 0) {
      throw InternalError("tis tree: root interval is not a safe interval of the goal");
    }

    MinQueue pq;
    pq.push({0, goal, gsi.lo, root});
    while (!pq.empty()) {
      auto [c, v, lo, id] = pq.top();
      pq.pop();
      if (nodes_[id].retired) continue;
      nodes_[id].popped = true;
      const TimeInterval piv = nodes_[id].iv;
      const int nc = c + 1;
      for (VertexId u : neighbors_with_wait(g, v)) {
        for (const TimeInterval& b : compute_backward_B(cons, agent, u, v, piv)) {
          // collect first: splitting rewrites at_vertex_[u] under our feet
          std::vector<int> hit;
          for (int mid : at_vertex_[u]) {
            const TisNode& m = nodes_[mid];
            if (m.iv.lo > b.hi) break;
            if (m.iv.hi < b.lo) continue;
            if (!is_reachable(m.cost) || m.cost > nc) hit.push_back(mid);
          }
          for (int mid : hit) split_improve(mid, b, nc, id, pq);
        }
      }
    }
  }

  // Retire node mid and re-tile its interval: the part covered by b gets the
  // improved cost and the popped node as parent, the rest keeps what it had.
  void split_improve(int mid, const TimeInterval& b, int nc, int parent_id, MinQueue& pq) {
    const TisNode old = nodes_[mid];
    if (old.popped) throw InternalError("tis tree: tried to split a settled node");
    const Time clo = std::max(old.iv.lo, b.lo);
    const Time chi = std::min(old.iv.hi, b.hi);
    nodes_[mid].retired = true;

    std::vector<int> repl;
    auto add = [&](Time lo, Time hi, int cost, int parent) {
      TisNode nd;
      nd.v = old.v;
      nd.iv = {lo, hi};
      nd.cost = cost;
      nd.parent = parent;
      int id = static_cast<int>(nodes_.size());
      nodes_.push_back(nd);
      repl.push_back(id);
      if (is_reachable(cost)) pq.push({cost, nd.v, lo, id});
    };
    if (old.iv.lo < clo) add(old.iv.lo, clo - 1, old.cost, old.parent);
    add(clo, chi, nc, parent_id);
    if (chi < old.iv.hi) add(chi + 1, old.iv.hi, old.cost, old.parent);

    auto& lst = at_vertex_[old.v];
    auto pos = std::find(lst.begin(), lst.end(), mid);
    if (pos == lst.end()) throw InternalError("tis tree: split target not live");
    pos = lst.erase(pos);
    lst.insert(pos, repl.begin(), repl.end());
  }

  VertexId goal_ = -1;
  TimeInterval gsi_;
  std::vector<TisNode> nodes_;
  std::vector<std::vector<int>> at_vertex_;  // live ids per vertex, ascending iv.lo
};

// All trees for one agent: one per safe interval of each of its goals.
// Forests are immutable after construction, so planner nodes share them.
class TisForest {
 public:
  TisForest() = default;
  TisForest(const GridMap& g, const ConstraintSet& cons, AgentId agent,
            const std::vector<VertexId>& goals) {
    goals_ = goals;
    trees_.resize(goals.size());
    for (int gi = 0; gi < static_cast<int>(goals.size()); ++gi) {
      for (const TimeInterval& si : compute_safe_intervals(cons, agent, goals[gi])) {
        trees_[gi].emplace_back(g, cons, agent, goals[gi], si);
      }
    }
  }

  int goal_count() const { return static_cast<int>(goals_.size()); }
  VertexId goal_vertex(int gi) const { return goals_[gi]; }
  const std::vector<VertexId>& goals() const { return goals_; }
  int gsi_count(int gi) const { return static_cast<int>(trees_[gi].size()); }
  const TisTree& tree(int gi, int si) const { return trees_[gi][si]; }
  const TimeInterval& gsi(int gi, int si) const { return trees_[gi][si].gsi(); }

 private:
  std::vector<VertexId> goals_;
  std::vector<std::vector<TisTree>> trees_;
};

}  // namespace mgmapf
