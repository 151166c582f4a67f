#pragma once

#include <chrono>
#include <cstdint>
#include <queue>
#include <tuple>
#include <vector>

#include "constraints.hpp"
#include "instance.hpp"
#include "low_level.hpp"
#include "solution.hpp"
#include "types.hpp"

namespace mgmapf {

struct CbsBudget {
  double timeout_ms = 0;             // 0 = no wall-clock limit
  std::uint64_t max_expansions = 0;  // 0 = no node limit; for reproducible runs
};

// Constraint-tree search. The planner supplies two things: a per-agent
// context rebuilt whenever that agent gains a constraint (heavy state like a
// tree forest lives there, shared with descendants that keep it unchanged),
// and a single-agent plan routine run under the node's constraints.
template <typename Planner>
class CbsSearch {
 public:
  struct Node {
    ConstraintSet cons;
    std::vector<typename Planner::AgentContext> ctx;
    std::vector<AgentPath> paths;
    long long soc = 0;
    int conflicts = 0;
  };

  enum class ChildOutcome { Ok, DuplicateConstraint, Infeasible };

  CbsSearch(const GridMap& g, const Instance& inst, Planner planner)
      : map_(&g), inst_(&inst), planner_(std::move(planner)) {}

  bool make_root(Node& out) {
    out = Node{};
    const int k = inst_->num_agents();
    out.ctx.resize(k);
    out.paths.resize(k);
    for (AgentId a = 0; a < k; ++a) {
      out.ctx[a] = planner_.make_context(a, out.cons);
      LowLevelResult r = planner_.plan(a, out.cons, out.ctx[a]);
      if (!r.found) return false;
      out.paths[a].pos = std::move(r.path);
    }
    finish_node(out);
    return true;
  }

  // Child = parent plus one constraint; only the constrained agent replans.
  ChildOutcome make_child(const Node& parent, const Constraint& c, Node& out) {
    if (parent.cons.contains(c)) return ChildOutcome::DuplicateConstraint;
    out = parent;
    out.cons = parent.cons.plus(c);
    out.ctx[c.agent] = planner_.make_context(c.agent, out.cons);
    LowLevelResult r = planner_.plan(c.agent, out.cons, out.ctx[c.agent]);
    if (!r.found) return ChildOutcome::Infeasible;
    out.paths[c.agent].pos = std::move(r.path);
    finish_node(out);
    return ChildOutcome::Ok;
  }

  SolveResult solve(const CbsBudget& budget) {
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
      return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
    };

    SolveResult res;
    std::vector<Node> nodes;
    // min-heap on (cost, conflicts, insertion order)
    using QItem = std::tuple<long long, int, std::uint64_t>;
    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> open;

    Node root;
    if (!make_root(root)) {
      res.status = SolveStatus::Infeasible;
      res.elapsed_ms = elapsed_ms();
      return res;
    }
    open.push({root.soc, root.conflicts, 0});
    nodes.push_back(std::move(root));

    while (!open.empty()) {
      if (budget.timeout_ms > 0 && elapsed_ms() > budget.timeout_ms) {
        res.status = SolveStatus::Timeout;
        break;
      }
      if (budget.max_expansions > 0 && res.ct_expansions >= budget.max_expansions) {
        res.status = SolveStatus::Timeout;
        break;
      }
      auto [soc, nconf, id] = open.top();
      open.pop();
      res.ct_expansions += 1;

      std::optional<Conflict> conflict = find_first_conflict(nodes[id].paths);
      if (!conflict) {
        res.status = SolveStatus::Solved;
        res.solution.paths = nodes[id].paths;
        res.soc = nodes[id].soc;
        break;
      }

      for (const Constraint& c : split_constraints(*conflict)) {
        Node child;
        if (make_child(nodes[id], c, child) != ChildOutcome::Ok) continue;
        open.push({child.soc, child.conflicts, nodes.size()});
        nodes.push_back(std::move(child));
      }
    }
    if (open.empty() && res.status != SolveStatus::Solved) {
      res.status = SolveStatus::Infeasible;
    }
    res.elapsed_ms = elapsed_ms();
    return res;
  }

  static std::vector<Constraint> split_constraints(const Conflict& c) {
    if (c.kind == Conflict::Kind::Vertex) {
      return {Constraint::vertex(c.i, c.t, c.v), Constraint::vertex(c.j, c.t, c.v)};
    }
    return {Constraint::edge(c.i, c.t, c.u_i, c.v_i),
            Constraint::edge(c.j, c.t, c.v_i, c.u_i)};
  }

 private:
  void finish_node(Node& n) {
    n.soc = 0;
    for (const auto& p : n.paths) n.soc += p.completion();
    n.conflicts = count_conflicts(n.paths);
  }

  const GridMap* map_;
  const Instance* inst_;
  Planner planner_;
};

}  // namespace mgmapf
