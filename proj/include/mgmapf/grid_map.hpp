#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace mgmapf {

// 4-connected grid parsed from the MovingAI map format. Passable cells get
// dense vertex ids in row-major order; everything else is -1.
struct GridMap {
  int height = 0;
  int width = 0;
  std::vector<std::string> rows;                    // normalized terrain chars
  std::vector<VertexId> cell_to_vertex;             // height*width, -1 if blocked
  std::vector<std::pair<int, int>> vertex_to_cell;  // vertex id -> (row, col)
  std::vector<std::vector<VertexId>> adj;           // sorted, symmetric, no self-loops

  int vertex_count() const { return static_cast<int>(vertex_to_cell.size()); }

  bool in_bounds(int r, int c) const {
    return r >= 0 && r < height && c >= 0 && c < width;
  }
  bool passable(int r, int c) const {
    return in_bounds(r, c) && cell_to_vertex[static_cast<size_t>(r) * width + c] >= 0;
  }
  VertexId vertex_at(int r, int c) const {
    return in_bounds(r, c) ? cell_to_vertex[static_cast<size_t>(r) * width + c] : -1;
  }
  std::pair<int, int> cell_of(VertexId v) const { return vertex_to_cell[v]; }
};

inline bool is_passable_char(char ch) {
  return ch == '.' || ch == 'G' || ch == 'S';
}
inline bool is_blocked_char(char ch) {
  return ch == '@' || ch == 'O' || ch == 'T' || ch == 'W';
}

// Parses "type octile / height H / width W / map" followed by H terrain rows.
// Throws ParseError with a 1-based line number on malformed input.
inline GridMap parse_map(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) {
      throw ParseError(std::string("map: unexpected end of file, expected ") + what);
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line("type header");
  if (line.rfind("type", 0) != 0) {
    throw ParseError("map line 1: expected 'type ...' header");
  }
  next_line("height header");
  int height = 0;
  if (std::sscanf(line.c_str(), "height %d", &height) != 1 || height <= 0) {
    throw ParseError("map line " + std::to_string(line_no) + ": bad height header");
  }
  next_line("width header");
  int width = 0;
  if (std::sscanf(line.c_str(), "width %d", &width) != 1 || width <= 0) {
    throw ParseError("map line " + std::to_string(line_no) + ": bad width header");
  }
  next_line("map header");
  if (line != "map") {
    throw ParseError("map line " + std::to_string(line_no) + ": expected 'map'");
  }

  GridMap g;
  g.height = height;
  g.width = width;
  g.rows.reserve(height);
  g.cell_to_vertex.assign(static_cast<size_t>(height) * width, -1);

  for (int r = 0; r < height; ++r) {
    next_line("terrain row");
    if (static_cast<int>(line.size()) != width) {
      throw ParseError("map line " + std::to_string(line_no) + ": row width " +
                       std::to_string(line.size()) + " != declared width " +
                       std::to_string(width));
    }
    for (int c = 0; c < width; ++c) {
      char ch = line[c];
      if (!is_passable_char(ch) && !is_blocked_char(ch)) {
        throw ParseError("map line " + std::to_string(line_no) + ": unknown cell '" +
                         std::string(1, ch) + "' at column " + std::to_string(c + 1));
      }
      if (is_passable_char(ch)) {
        g.cell_to_vertex[static_cast<size_t>(r) * width + c] =
            static_cast<VertexId>(g.vertex_to_cell.size());
        g.vertex_to_cell.emplace_back(r, c);
      }
    }
    g.rows.push_back(line);
  }

  g.adj.assign(g.vertex_to_cell.size(), {});
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto [r, c] = g.vertex_to_cell[v];
    // N, S, W, E; ids come out sorted because of row-major numbering
    const int dr[4] = {-1, 1, 0, 0};
    const int dc[4] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      VertexId u = g.vertex_at(r + dr[k], c + dc[k]);
      if (u >= 0) g.adj[v].push_back(u);
    }
    std::sort(g.adj[v].begin(), g.adj[v].end());
  }
  return g;
}

// Unit-weight distances from src to every vertex; kUnreachable where disconnected.
inline std::vector<int> bfs_distances(const GridMap& g, VertexId src) {
  std::vector<int> dist(g.vertex_count(), kUnreachable);
  std::vector<VertexId> frontier{src};
  dist[src] = 0;
  while (!frontier.empty()) {
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      for (VertexId u : g.adj[v]) {
        if (dist[u] == kUnreachable) {
          dist[u] = dist[v] + 1;
          next.push_back(u);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

// Successor set for spacetime moves: the four neighbours plus v itself
// (waiting in place), in ascending vertex order.
inline std::vector<VertexId> neighbors_with_wait(const GridMap& g, VertexId v) {
  std::vector<VertexId> out = g.adj[v];
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

// Round-trip partner of parse_map on normalized text (LF endings, no trailer).
inline std::string serialize_map(const GridMap& g) {
  std::ostringstream out;
  out << "type octile\n";
  out << "height " << g.height << "\n";
  out << "width " << g.width << "\n";
  out << "map\n";
  for (const auto& row : g.rows) out << row << "\n";
  return out.str();
}

}  // namespace mgmapf
