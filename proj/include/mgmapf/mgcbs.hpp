#pragma once

#include <map>
#include <memory>
#include <queue>
#include <tuple>
#include <vector>

#include "cbs.hpp"
#include "constraints.hpp"
#include "grid_map.hpp"
#include "instance.hpp"
#include "low_level.hpp"
#include "tis_forest.hpp"

namespace mgmapf {

// Planner whose per-agent context is a tree forest: rebuilt only for the
// agent that gained a constraint, shared by pointer everywhere else. The
// plan step itself is pure lookup stitching.
class ForestPlanner {
 public:
  using AgentContext = std::shared_ptr<const TisForest>;

  ForestPlanner(const GridMap& g, const Instance& inst) : map_(&g), inst_(&inst) {
    dtables_.reserve(inst.agents.size());
    for (const auto& task : inst.agents) dtables_.emplace_back(g, task.goals);
  }

  AgentContext make_context(AgentId a, const ConstraintSet& cons) const {
    return std::make_shared<const TisForest>(*map_, cons, a, inst_->agents[a].goals);
  }

  LowLevelResult plan(AgentId a, const ConstraintSet&, const AgentContext& ctx) const {
    ForestEngine eng(*ctx);
    return low_level_search(eng, dtables_[a], inst_->agents[a].start);
  }

  const DistanceTable& dtable(AgentId a) const { return dtables_[a]; }

 private:
  const GridMap* map_;
  const Instance* inst_;
  std::vector<DistanceTable> dtables_;
};

// Transfer engine that answers each interval query with a fresh spacetime
// A* instead of a prebuilt tree. Same target semantics, no amortization.
class AstarToGsiEngine {
 public:
  AstarToGsiEngine(const GridMap& g, const ConstraintSet& cons, AgentId a,
                   const std::vector<VertexId>& goals, const DistanceTable& D)
      : map_(&g), cons_(&cons), agent_(a), goals_(&goals), D_(&D) {
    gsis_.reserve(goals.size());
    for (VertexId gv : goals) gsis_.push_back(compute_safe_intervals(cons, a, gv));
    horizon_ = cons.max_time() + static_cast<Time>(g.vertex_count()) *
                                     (static_cast<Time>(goals.size()) + 1);
  }

  int goal_count() const { return static_cast<int>(goals_->size()); }
  VertexId goal_vertex(int gi) const { return (*goals_)[gi]; }
  int gsi_count(int gi) const { return static_cast<int>(gsis_[gi].size()); }
  const TimeInterval& gsi(int gi, int si) const { return gsis_[gi][si]; }

  int transfer_length(VertexId from, Time t, int gi, int si) const {
    return search(from, t, gi, si, nullptr);
  }
  std::vector<VertexId> transfer_path(VertexId from, Time t, int gi, int si) const {
    std::vector<VertexId> path;
    int len = search(from, t, gi, si, &path);
    if (!is_reachable(len)) return {};
    return path;
  }

 private:
  // Earliest arrival at goal gi inside interval si, departing (from, t).
  // Returns elapsed steps or kUnreachable; fills *out with the positions.
  int search(VertexId from, Time t, int gi, int si, std::vector<VertexId>* out) const {
    const TimeInterval& target = gsis_[gi][si];
    const VertexId gv = (*goals_)[gi];
    if (cons_->vertex_blocked(agent_, from, t)) return kUnreachable;

    struct Visit {
      VertexId v;
      Time tau;
      int parent;
    };
    std::vector<Visit> visits;
    std::map<std::pair<VertexId, Time>, char> closed;
    // f, -tau, v keeps expansion order unique: tau fixes g, v breaks ties
    using QItem = std::tuple<Time, Time, VertexId, int>;
    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> open;

    auto h = [&](VertexId v, Time tau) {
      int d = D_->dist(gi, v);
      if (!is_reachable(d)) return kTimeInf;
      return std::max<Time>(d, target.lo - tau);
    };

    visits.push_back({from, t, -1});
    if (h(from, t) < kTimeInf) open.push({t + h(from, t), -t, from, 0});
    while (!open.empty()) {
      auto [f, neg_tau, v, id] = open.top();
      open.pop();
      Time tau = -neg_tau;
      if (closed.count({v, tau})) continue;
      closed[{v, tau}] = 1;

      if (v == gv && target.contains(tau)) {
        if (out) {
          for (int cur = id; cur >= 0; cur = visits[cur].parent) {
            out->push_back(visits[cur].v);
          }
          std::reverse(out->begin(), out->end());
        }
        return tau - t;
      }
      if (tau >= horizon_ || tau >= target.hi) continue;
      for (VertexId u : neighbors_with_wait(*map_, v)) {
        if (!is_move_safe(*cons_, agent_, v, u, tau)) continue;
        if (closed.count({u, tau + 1})) continue;
        Time hv = h(u, tau + 1);
        if (hv >= kTimeInf) continue;
        visits.push_back({u, tau + 1, id});
        open.push({tau + 1 + hv, -(tau + 1), u, static_cast<int>(visits.size()) - 1});
      }
    }
    return kUnreachable;
  }

  const GridMap* map_;
  const ConstraintSet* cons_;
  AgentId agent_;
  const std::vector<VertexId>* goals_;
  const DistanceTable* D_;
  std::vector<std::vector<TimeInterval>> gsis_;
  Time horizon_ = 0;
};

// Same interval-level search as ForestPlanner but with per-query A*; exists
// to price what the prebuilt trees buy.
class NoForestPlanner {
 public:
  struct AgentContext {};  // nothing to amortize

  NoForestPlanner(const GridMap& g, const Instance& inst) : map_(&g), inst_(&inst) {
    dtables_.reserve(inst.agents.size());
    for (const auto& task : inst.agents) dtables_.emplace_back(g, task.goals);
  }

  AgentContext make_context(AgentId, const ConstraintSet&) const { return {}; }

  LowLevelResult plan(AgentId a, const ConstraintSet& cons, const AgentContext&) const {
    AstarToGsiEngine eng(*map_, cons, a, inst_->agents[a].goals, dtables_[a]);
    return low_level_search(eng, dtables_[a], inst_->agents[a].start);
  }

 private:
  const GridMap* map_;
  const Instance* inst_;
  std::vector<DistanceTable> dtables_;
};

inline SolveResult mgcbs_solve(const GridMap& g, const Instance& inst,
                               const CbsBudget& budget = {}) {
  CbsSearch<ForestPlanner> search(g, inst, ForestPlanner(g, inst));
  return search.solve(budget);
}

inline SolveResult mgcbs_noforest_solve(const GridMap& g, const Instance& inst,
                                        const CbsBudget& budget = {}) {
  CbsSearch<NoForestPlanner> search(g, inst, NoForestPlanner(g, inst));
  return search.solve(budget);
}

}  // namespace mgmapf
