#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "grid_map.hpp"
#include "instance.hpp"
#include "solution.hpp"
#include "types.hpp"

namespace mgmapf {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
  if (!out) throw ParseError("write failed: " + path);
}

inline GridMap load_map_file(const std::string& path) {
  return parse_map(read_text_file(path));
}

inline Instance load_instance_file(const std::string& path, const GridMap& g) {
  return load_instance(read_text_file(path), g);
}

struct SolutionFile {
  Solution sol;
  long long cost = -1;
  std::string algo;
  double elapsed_ms = 0;
};

// {"cost": ..., "paths": [[[r, c], ...], ...], "algo": ..., "elapsed_ms": ...}
// emitted with fixed key order and spacing so identical runs give identical bytes.
inline std::string serialize_solution(const GridMap& g, const Solution& sol,
                                      const std::string& algo, double elapsed_ms) {
  std::ostringstream out;
  out << "{\"cost\": " << sol.soc() << ", \"paths\": [";
  for (size_t a = 0; a < sol.paths.size(); ++a) {
    if (a) out << ", ";
    out << "[";
    const auto& pos = sol.paths[a].pos;
    for (size_t t = 0; t < pos.size(); ++t) {
      if (t) out << ", ";
      auto [r, c] = g.cell_of(pos[t]);
      out << "[" << r << ", " << c << "]";
    }
    out << "]";
  }
  char ms[64];
  std::snprintf(ms, sizeof(ms), "%.3f", elapsed_ms);
  out << "], \"algo\": \"" << algo << "\", \"elapsed_ms\": " << ms << "}\n";
  return out.str();
}

inline SolutionFile parse_solution(const std::string& text, const GridMap& g) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("cost") || !j.contains("paths")) {
    throw ParseError("solution must be an object with \"cost\" and \"paths\"");
  }
  SolutionFile out;
  if (!j["cost"].is_number_integer()) throw ParseError("\"cost\" must be an integer");
  out.cost = j["cost"].get<long long>();
  if (j.contains("algo")) out.algo = j["algo"].get<std::string>();
  if (j.contains("elapsed_ms")) out.elapsed_ms = j["elapsed_ms"].get<double>();
  if (!j["paths"].is_array()) throw ParseError("\"paths\" must be an array");
  for (const auto& jp : j["paths"]) {
    if (!jp.is_array()) throw ParseError("each path must be an array of [row, col]");
    AgentPath p;
    for (const auto& cell : jp) {
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number_integer() ||
          !cell[1].is_number_integer()) {
        throw ParseError("each position must be a [row, col] pair");
      }
      // off-map positions become -1 and are reported by the validator
      p.pos.push_back(g.vertex_at(cell[0].get<int>(), cell[1].get<int>()));
    }
    out.sol.paths.push_back(std::move(p));
  }
  return out;
}

}  // namespace mgmapf
