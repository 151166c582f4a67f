#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "types.hpp"

namespace mgmapf {

// One agent's motion: pos[t] for t = 0..completion(). After completion the
// agent stays parked on its final vertex and still occupies it.
struct AgentPath {
  std::vector<VertexId> pos;

  Time completion() const { return static_cast<Time>(pos.size()) - 1; }
  VertexId at(Time t) const {
    return t < static_cast<Time>(pos.size()) ? pos[t] : pos.back();
  }
};

struct Solution {
  std::vector<AgentPath> paths;

  long long soc() const {
    long long s = 0;
    for (const auto& p : paths) s += p.completion();
    return s;
  }
};

struct Conflict {
  enum class Kind { Vertex, Edge };
  Kind kind = Kind::Vertex;
  Time t = 0;
  AgentId i = -1;
  AgentId j = -1;
  VertexId v = -1;   // vertex kind: both stand on v at t
  VertexId u_i = -1; // edge kind: i departs u_i at t for v_i while j does the reverse
  VertexId v_i = -1;
};

// Earliest conflict under the ordering (t, i, j, vertex-before-edge), with
// parked agents still occupying their final vertices. Two agents whose paths
// only collide after one of them finished are caught by scanning up to the
// latest completion time.
inline std::optional<Conflict> find_first_conflict(const std::vector<AgentPath>& paths) {
  const int k = static_cast<int>(paths.size());
  Time t_max = 0;
  for (const auto& p : paths) t_max = std::max(t_max, p.completion());
  for (Time t = 0; t <= t_max; ++t) {
    for (AgentId i = 0; i < k; ++i) {
      for (AgentId j = i + 1; j < k; ++j) {
        if (paths[i].at(t) == paths[j].at(t)) {
          Conflict c;
          c.kind = Conflict::Kind::Vertex;
          c.t = t;
          c.i = i;
          c.j = j;
          c.v = paths[i].at(t);
          return c;
        }
        if (t < t_max && paths[i].at(t) == paths[j].at(t + 1) &&
            paths[j].at(t) == paths[i].at(t + 1) && paths[i].at(t) != paths[i].at(t + 1)) {
          Conflict c;
          c.kind = Conflict::Kind::Edge;
          c.t = t;
          c.i = i;
          c.j = j;
          c.u_i = paths[i].at(t);
          c.v_i = paths[i].at(t + 1);
          return c;
        }
      }
    }
  }
  return std::nullopt;
}

// Total number of (t, pair) collisions; used only to break cost ties.
inline int count_conflicts(const std::vector<AgentPath>& paths) {
  const int k = static_cast<int>(paths.size());
  Time t_max = 0;
  for (const auto& p : paths) t_max = std::max(t_max, p.completion());
  int n = 0;
  for (Time t = 0; t <= t_max; ++t) {
    for (AgentId i = 0; i < k; ++i) {
      for (AgentId j = i + 1; j < k; ++j) {
        if (paths[i].at(t) == paths[j].at(t)) n += 1;
        if (t < t_max && paths[i].at(t) == paths[j].at(t + 1) &&
            paths[j].at(t) == paths[i].at(t + 1) && paths[i].at(t) != paths[i].at(t + 1)) {
          n += 1;
        }
      }
    }
  }
  return n;
}

enum class SolveStatus { Solved, Infeasible, Timeout };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  Solution solution;        // populated when status == Solved
  long long soc = -1;
  std::uint64_t ct_expansions = 0;  // high-level nodes taken off the queue
  double elapsed_ms = 0.0;
};

}  // namespace mgmapf
