#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "grid_map.hpp"
#include "instance.hpp"
#include "solution.hpp"
#include "types.hpp"
#include "validate.hpp"

namespace mgmapf {

// Static SVG rendering of a verified solution: obstacle squares, one colored
// polyline per agent with a dot per timestep, a filled square at the start
// and rings on the goals. Output bytes are a pure function of the inputs.
inline std::string emit_plot(const GridMap& g, const Instance& inst, const Solution& sol) {
  auto violations = verify_solution(g, inst, sol);
  if (!violations.empty()) {
    throw ValidationError("refusing to plot an invalid solution: " +
                          std::string(violation_name(violations.front().kind)) + " (" +
                          violations.front().detail + ")");
  }

  static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
                                  "#bcbd22", "#7f7f7f", "#aec7e8", "#98df8a"};
  constexpr int kPaletteSize = 12;
  constexpr int cell = 24;
  constexpr int margin = 12;
  const int W = g.width * cell + 2 * margin;
  const int H = g.height * cell + 2 * margin;

  auto cx = [&](VertexId v, int agent) {
    auto [r, c] = g.cell_of(v);
    (void)r;
    return margin + c * cell + cell / 2 + ((agent % 3) - 1) * 3;
  };
  auto cy = [&](VertexId v, int agent) {
    auto [r, c] = g.cell_of(v);
    (void)c;
    return margin + r * cell + cell / 2 + (((agent / 3) % 3) - 1) * 3;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
      << "\" fill=\"#ffffff\"/>\n";

  // terrain
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (!g.passable(r, c)) {
        out << "<rect x=\"" << margin + c * cell << "\" y=\"" << margin + r * cell
            << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"#444444\"/>\n";
      }
    }
  }
  // grid lines
  for (int r = 0; r <= g.height; ++r) {
    out << "<line x1=\"" << margin << "\" y1=\"" << margin + r * cell << "\" x2=\""
        << margin + g.width * cell << "\" y2=\"" << margin + r * cell
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }
  for (int c = 0; c <= g.width; ++c) {
    out << "<line x1=\"" << margin + c * cell << "\" y1=\"" << margin << "\" x2=\""
        << margin + c * cell << "\" y2=\"" << margin + g.height * cell
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }

  for (size_t a = 0; a < sol.paths.size(); ++a) {
    const char* color = palette[a % kPaletteSize];
    const auto& pos = sol.paths[a].pos;
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2.5\" stroke-opacity=\"0.8\" points=\"";
    for (size_t t = 0; t < pos.size(); ++t) {
      if (t) out << " ";
      out << cx(pos[t], static_cast<int>(a)) << "," << cy(pos[t], static_cast<int>(a));
    }
    out << "\"/>\n";
    for (size_t t = 0; t < pos.size(); ++t) {
      out << "<circle cx=\"" << cx(pos[t], static_cast<int>(a)) << "\" cy=\""
          << cy(pos[t], static_cast<int>(a)) << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }
    // start marker
    out << "<rect x=\"" << cx(pos[0], static_cast<int>(a)) - 5 << "\" y=\""
        << cy(pos[0], static_cast<int>(a)) - 5 << "\" width=\"10\" height=\"10\" fill=\""
        << color << "\"/>\n";
    // goal rings
    for (VertexId gv : inst.agents[a].goals) {
      out << "<circle cx=\"" << cx(gv, static_cast<int>(a)) << "\" cy=\""
          << cy(gv, static_cast<int>(a)) << "\" r=\"7\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace mgmapf
