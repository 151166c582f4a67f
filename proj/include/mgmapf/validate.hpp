#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "grid_map.hpp"
#include "instance.hpp"
#include "solution.hpp"
#include "types.hpp"

namespace mgmapf {

enum class ViolationKind {
  AgentCountMismatch,
  EmptyPath,
  WrongStart,
  Discontinuity,
  GoalMissed,
  TerminalNotGoal,
  VertexConflict,
  EdgeConflict,
  CostMismatch,
};

inline const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::AgentCountMismatch: return "agent_count_mismatch";
    case ViolationKind::EmptyPath: return "empty_path";
    case ViolationKind::WrongStart: return "wrong_start";
    case ViolationKind::Discontinuity: return "discontinuity";
    case ViolationKind::GoalMissed: return "goal_missed";
    case ViolationKind::TerminalNotGoal: return "terminal_not_goal";
    case ViolationKind::VertexConflict: return "vertex_conflict";
    case ViolationKind::EdgeConflict: return "edge_conflict";
    case ViolationKind::CostMismatch: return "cost_mismatch";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  AgentId agent = -1;  // second agent of a conflict lives in detail
  Time t = -1;
  std::string detail;
};

// Full audit of a claimed solution against map + tasks. Violations come out
// in check order (per-path shape first, then cross-agent conflicts, then the
// declared cost), so the first entry names the root cause. claimed_cost < 0
// skips the cost check.
inline std::vector<Violation> verify_solution(const GridMap& g, const Instance& inst,
                                              const Solution& sol,
                                              long long claimed_cost = -1) {
  std::vector<Violation> out;
  const int k = inst.num_agents();
  if (static_cast<int>(sol.paths.size()) != k) {
    std::ostringstream msg;
    msg << "expected " << k << " paths, got " << sol.paths.size();
    out.push_back({ViolationKind::AgentCountMismatch, -1, -1, msg.str()});
    return out;
  }

  auto valid_vertex = [&](VertexId v) { return v >= 0 && v < g.vertex_count(); };
  auto adjacent_or_equal = [&](VertexId a, VertexId b) {
    if (a == b) return true;
    return std::binary_search(g.adj[a].begin(), g.adj[a].end(), b);
  };

  std::vector<bool> usable(k, true);
  for (AgentId a = 0; a < k; ++a) {
    const auto& pos = sol.paths[a].pos;
    if (pos.empty()) {
      out.push_back({ViolationKind::EmptyPath, a, -1, "agent has no positions"});
      usable[a] = false;
      continue;
    }
    bool shape_ok = true;
    for (Time t = 0; t < static_cast<Time>(pos.size()); ++t) {
      if (!valid_vertex(pos[t])) {
        std::ostringstream msg;
        msg << "position at t=" << t << " is not a passable cell";
        out.push_back({ViolationKind::Discontinuity, a, t, msg.str()});
        shape_ok = false;
        break;
      }
      if (t > 0 && !adjacent_or_equal(pos[t - 1], pos[t])) {
        std::ostringstream msg;
        auto [r0, c0] = g.cell_of(pos[t - 1]);
        auto [r1, c1] = g.cell_of(pos[t]);
        msg << "jump from (" << r0 << "," << c0 << ") to (" << r1 << "," << c1
            << ") during step " << (t - 1) << "->" << t;
        out.push_back({ViolationKind::Discontinuity, a, t, msg.str()});
        shape_ok = false;
        break;
      }
    }
    if (!shape_ok) {
      usable[a] = false;
      continue;
    }
    if (pos[0] != inst.agents[a].start) {
      out.push_back({ViolationKind::WrongStart, a, 0, "path does not begin at the start"});
    }
    std::set<VertexId> seen(pos.begin(), pos.end());
    for (VertexId gv : inst.agents[a].goals) {
      if (!seen.count(gv)) {
        std::ostringstream msg;
        auto [r, c] = g.cell_of(gv);
        msg << "goal (" << r << "," << c << ") never visited";
        out.push_back({ViolationKind::GoalMissed, a, -1, msg.str()});
      }
    }
    bool terminal_is_goal = false;
    for (VertexId gv : inst.agents[a].goals) {
      if (pos.back() == gv) terminal_is_goal = true;
    }
    if (!terminal_is_goal) {
      out.push_back({ViolationKind::TerminalNotGoal, a, sol.paths[a].completion(),
                     "path ends off every goal"});
    }
  }

  Time t_max = 0;
  for (AgentId a = 0; a < k; ++a) {
    if (usable[a]) t_max = std::max(t_max, sol.paths[a].completion());
  }
  for (Time t = 0; t <= t_max; ++t) {
    for (AgentId i = 0; i < k; ++i) {
      for (AgentId j = i + 1; j < k; ++j) {
        if (!usable[i] || !usable[j]) continue;
        if (sol.paths[i].at(t) == sol.paths[j].at(t)) {
          std::ostringstream msg;
          msg << "agents " << i << " and " << j << " both occupy vertex "
              << sol.paths[i].at(t) << " at t=" << t;
          out.push_back({ViolationKind::VertexConflict, i, t, msg.str()});
        }
        if (t < t_max && sol.paths[i].at(t) == sol.paths[j].at(t + 1) &&
            sol.paths[j].at(t) == sol.paths[i].at(t + 1) &&
            sol.paths[i].at(t) != sol.paths[i].at(t + 1)) {
          std::ostringstream msg;
          msg << "agents " << i << " and " << j << " swap across an edge during step "
              << t << "->" << (t + 1);
          out.push_back({ViolationKind::EdgeConflict, i, t, msg.str()});
        }
      }
    }
  }

  if (claimed_cost >= 0) {
    long long actual = sol.soc();
    if (actual != claimed_cost) {
      std::ostringstream msg;
      msg << "declared cost " << claimed_cost << " but paths sum to " << actual;
      out.push_back({ViolationKind::CostMismatch, -1, -1, msg.str()});
    }
  }
  return out;
}

}  // namespace mgmapf
