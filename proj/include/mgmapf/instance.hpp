#pragma once

#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "grid_map.hpp"
#include "types.hpp"

namespace mgmapf {

// One agent: a start vertex and the set of goal vertices it must visit
// (each at least once, any order). Goals are stored in file order; the
// solver treats them as a set.
struct AgentTask {
  VertexId start = -1;
  std::vector<VertexId> goals;
};

struct Instance {
  std::string map_ref;  // map path as written in the instance file
  std::vector<AgentTask> agents;

  int num_agents() const { return static_cast<int>(agents.size()); }
};

namespace detail {
inline VertexId cell_vertex_checked(const GridMap& g, const nlohmann::json& arr,
                                    const std::string& what) {
  if (!arr.is_array() || arr.size() != 2 || !arr[0].is_number_integer() ||
      !arr[1].is_number_integer()) {
    throw ParseError("instance: " + what + " must be a [row, col] pair");
  }
  int r = arr[0].get<int>();
  int c = arr[1].get<int>();
  if (!g.in_bounds(r, c)) {
    throw ValidationError("instance: " + what + " [" + std::to_string(r) + ", " +
                          std::to_string(c) + "] is outside the map");
  }
  VertexId v = g.vertex_at(r, c);
  if (v < 0) {
    throw ValidationError("instance: " + what + " [" + std::to_string(r) + ", " +
                          std::to_string(c) + "] is on a blocked cell");
  }
  return v;
}
}  // namespace detail

// Parses and validates an instance JSON against an already-parsed map.
// Rules: >= 1 agent, starts pairwise distinct, every start/goal passable,
// goals per agent non-empty and pairwise distinct.
inline Instance load_instance(const std::string& text, const GridMap& g) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance: bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("agents") || !j["agents"].is_array()) {
    throw ParseError("instance: expected object with an 'agents' array");
  }

  Instance inst;
  inst.map_ref = j.value("map", std::string());
  std::set<VertexId> seen_starts;
  int idx = 0;
  for (const auto& ja : j["agents"]) {
    const std::string who = "agent " + std::to_string(idx);
    if (!ja.is_object() || !ja.contains("start") || !ja.contains("goals")) {
      throw ParseError("instance: " + who + " needs 'start' and 'goals'");
    }
    AgentTask task;
    task.start = detail::cell_vertex_checked(g, ja["start"], who + " start");
    if (!seen_starts.insert(task.start).second) {
      throw ValidationError("instance: " + who + " start duplicates another agent's start");
    }
    if (!ja["goals"].is_array() || ja["goals"].empty()) {
      throw ValidationError("instance: " + who + " has no goals");
    }
    std::set<VertexId> seen_goals;
    int gi = 0;
    for (const auto& jg : ja["goals"]) {
      VertexId v = detail::cell_vertex_checked(g, jg, who + " goal " + std::to_string(gi));
      if (!seen_goals.insert(v).second) {
        throw ValidationError("instance: " + who + " goal " + std::to_string(gi) +
                              " repeats an earlier goal");
      }
      task.goals.push_back(v);
      ++gi;
    }
    inst.agents.push_back(std::move(task));
    ++idx;
  }
  if (inst.agents.empty()) throw ValidationError("instance: no agents");
  return inst;
}

// Deterministic serialization: fixed key order, fixed spacing, LF newlines.
// Byte-identical output for equal instances is relied on by the generator.
inline std::string serialize_instance(const Instance& inst, const GridMap& g) {
  std::ostringstream out;
  out << "{\n  \"map\": \"" << inst.map_ref << "\",\n  \"agents\": [\n";
  for (size_t i = 0; i < inst.agents.size(); ++i) {
    const auto& a = inst.agents[i];
    auto [sr, sc] = g.cell_of(a.start);
    out << "    {\"start\": [" << sr << ", " << sc << "], \"goals\": [";
    for (size_t k = 0; k < a.goals.size(); ++k) {
      auto [gr, gc] = g.cell_of(a.goals[k]);
      if (k) out << ", ";
      out << "[" << gr << ", " << gc << "]";
    }
    out << "]}";
    if (i + 1 < inst.agents.size()) out << ",";
    out << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

}  // namespace mgmapf
