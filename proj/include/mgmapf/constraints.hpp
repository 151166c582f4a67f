#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace mgmapf {

// CBS constraint on a single agent. Vertex: may not occupy v at step t.
// Edge: may not depart `from` at step t arriving `to` at t+1 (directed;
// the split puts the opposite direction on the other agent).
struct Constraint {
  enum class Kind { Vertex, Edge };
  Kind kind = Kind::Vertex;
  AgentId agent = -1;
  Time t = 0;
  VertexId v = -1;     // vertex kind
  VertexId from = -1;  // edge kind
  VertexId to = -1;

  static Constraint vertex(AgentId a, Time t, VertexId v) {
    Constraint c;
    c.kind = Kind::Vertex;
    c.agent = a;
    c.t = t;
    c.v = v;
    return c;
  }
  static Constraint edge(AgentId a, Time t, VertexId from, VertexId to) {
    Constraint c;
    c.kind = Kind::Edge;
    c.agent = a;
    c.t = t;
    c.from = from;
    c.to = to;
    return c;
  }

  bool operator==(const Constraint& o) const {
    return kind == o.kind && agent == o.agent && t == o.t && v == o.v &&
           from == o.from && to == o.to;
  }
};

// Immutable constraint store. CBS children are built with plus(), which
// copies; the per-key time vectors stay sorted so interval math is linear.
class ConstraintSet {
 public:
  ConstraintSet() = default;

  ConstraintSet plus(const Constraint& c) const {
    ConstraintSet out = *this;
    auto& pa = out.agents_[c.agent];
    if (c.kind == Constraint::Kind::Vertex) {
      insert_sorted(pa.vertex[c.v], c.t);
    } else {
      insert_sorted(pa.edge[{c.from, c.to}], c.t);
    }
    out.count_ += 1;
    out.max_time_ = std::max(out.max_time_, c.t);
    return out;
  }

  bool contains(const Constraint& c) const {
    auto it = agents_.find(c.agent);
    if (it == agents_.end()) return false;
    if (c.kind == Constraint::Kind::Vertex) {
      auto vt = it->second.vertex.find(c.v);
      return vt != it->second.vertex.end() &&
             std::binary_search(vt->second.begin(), vt->second.end(), c.t);
    }
    auto et = it->second.edge.find({c.from, c.to});
    return et != it->second.edge.end() &&
           std::binary_search(et->second.begin(), et->second.end(), c.t);
  }

  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  Time max_time() const { return max_time_; }

  bool vertex_blocked(AgentId a, VertexId v, Time t) const {
    const auto* times = vertex_times(a, v);
    return times && std::binary_search(times->begin(), times->end(), t);
  }

  bool edge_blocked(AgentId a, VertexId from, VertexId to, Time t_depart) const {
    auto it = agents_.find(a);
    if (it == agents_.end()) return false;
    auto et = it->second.edge.find({from, to});
    return et != it->second.edge.end() &&
           std::binary_search(et->second.begin(), et->second.end(), t_depart);
  }

  // Sorted times at which (a, v) is vertex-constrained, or nullptr.
  const std::vector<Time>* vertex_times(AgentId a, VertexId v) const {
    auto it = agents_.find(a);
    if (it == agents_.end()) return nullptr;
    auto vt = it->second.vertex.find(v);
    return vt == it->second.vertex.end() ? nullptr : &vt->second;
  }

  // Sorted departure times at which (a, from->to) is edge-constrained.
  const std::vector<Time>* edge_times(AgentId a, VertexId from, VertexId to) const {
    auto it = agents_.find(a);
    if (it == agents_.end()) return nullptr;
    auto et = it->second.edge.find({from, to});
    return et == it->second.edge.end() ? nullptr : &et->second;
  }

  bool has_vertex_constraint_at_or_after(AgentId a, VertexId v, Time t) const {
    const auto* times = vertex_times(a, v);
    return times && !times->empty() && times->back() >= t;
  }

  // One JSON object per line, deterministic order; debug aid only.
  std::string dump_jsonl() const {
    std::ostringstream out;
    for (const auto& [agent, pa] : agents_) {
      for (const auto& [v, times] : pa.vertex) {
        for (Time t : times) {
          out << "{\"agent\": " << agent << ", \"kind\": \"vertex\", \"t\": " << t
              << ", \"v\": " << v << "}\n";
        }
      }
      for (const auto& [e, times] : pa.edge) {
        for (Time t : times) {
          out << "{\"agent\": " << agent << ", \"kind\": \"edge\", \"t\": " << t
              << ", \"from\": " << e.first << ", \"to\": " << e.second << "}\n";
        }
      }
    }
    return out.str();
  }

 private:
  struct PerAgent {
    std::map<VertexId, std::vector<Time>> vertex;
    std::map<std::pair<VertexId, VertexId>, std::vector<Time>> edge;
  };

  static void insert_sorted(std::vector<Time>& v, Time t) {
    auto it = std::lower_bound(v.begin(), v.end(), t);
    if (it == v.end() || *it != t) v.insert(it, t);
  }

  std::map<AgentId, PerAgent> agents_;
  int count_ = 0;
  Time max_time_ = 0;
};

// True when agent a may depart `from` at t and stand on `to` at t+1.
// Wait moves (from == to) only face the arrival-vertex check.
inline bool is_move_safe(const ConstraintSet& cons, AgentId a, VertexId from,
                         VertexId to, Time t_depart) {
  if (cons.vertex_blocked(a, to, t_depart + 1)) return false;
  if (from != to && cons.edge_blocked(a, from, to, t_depart)) return false;
  return true;
}

// Maximal constraint-free intervals at (a, v), in order, covering exactly
// [0, inf) minus the constrained steps. The last interval is unbounded.
inline std::vector<TimeInterval> compute_safe_intervals(const ConstraintSet& cons,
                                                        AgentId a, VertexId v) {
  std::vector<TimeInterval> out;
  const auto* times = cons.vertex_times(a, v);
  Time lo = 0;
  if (times) {
    for (Time t : *times) {
      if (t > lo) out.push_back({lo, t - 1});
      lo = t + 1;
    }
  }
  out.push_back({lo, kTimeInf});
  return out;
}

// The safe interval containing t=0. Errors when the agent may not occupy
// its position at time zero (no legal start exists under cons).
inline TimeInterval get_earliest_si(const ConstraintSet& cons, AgentId a, VertexId v) {
  if (cons.vertex_blocked(a, v, 0)) {
    throw ValidationError("no start interval: vertex " + std::to_string(v) +
                          " is constrained at t=0 for agent " + std::to_string(a));
  }
  return compute_safe_intervals(cons, a, v).front();
}

}  // namespace mgmapf
