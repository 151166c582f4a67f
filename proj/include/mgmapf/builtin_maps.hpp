#pragma once

#include <map>
#include <string>
#include <vector>

#include "grid_map.hpp"
#include "types.hpp"

namespace mgmapf {

// Compiled-in copies of the maps under maps/. Benchmarks and tests refer to
// these by name so they run from any working directory; the files exist for
// the CLI and for eyeballing. A test pins file == constant.

inline const char* kCrowdAMap =
    "type octile\n"
    "height 5\n"
    "width 5\n"
    "map\n"
    ".....\n"
    ".@.@.\n"
    ".....\n"
    ".@.@.\n"
    ".....\n";

inline const char* kCrowdBMap =
    "type octile\n"
    "height 5\n"
    "width 7\n"
    "map\n"
    ".......\n"
    ".@@@@@.\n"
    ".......\n"
    ".@@@@@.\n"
    ".......\n";

inline const char* kMaze32Map =
    "type octile\n"
    "height 32\n"
    "width 32\n"
    "map\n"
    "........@...............@.......\n"
    "........@...............@.......\n"
    "........@.......@.......@.......\n"
    "................@...............\n"
    "................@...............\n"
    "@@@@@@@@@@@@@@@@@@@@@@@@@@@@@..@\n"
    "................@...............\n"
    "................@...............\n"
    "........@.......@.......@.......\n"
    "........@...............@.......\n"
    "........@...............@.......\n"
    "@..@@@@@@@@@@@@@@@@@@@@@@@@@@@@@\n"
    "........@...............@.......\n"
    "........@...............@.......\n"
    "........@.......@.......@.......\n"
    "................@...............\n"
    "................@...............\n"
    "@@@@@@@@@@@@@@@@@@@@@@@@@@@@@..@\n"
    "................@...............\n"
    "................@...............\n"
    "........@.......@.......@.......\n"
    "........@...............@.......\n"
    "........@...............@.......\n"
    "@..@@@@@@@@@@@@@@@@@@@@@@@@@@@@@\n"
    "........@...............@.......\n"
    "........@...............@.......\n"
    "........@.......@.......@.......\n"
    "................@...............\n"
    "................@...............\n"
    "@@@@@@@@@@@@@@@@@@@@@@@@@@@@@..@\n"
    "................................\n"
    "................................\n";

inline const std::map<std::string, const char*>& builtin_maps() {
  static const std::map<std::string, const char*> reg = {
      {"crowd_a", kCrowdAMap},
      {"crowd_b", kCrowdBMap},
      {"maze32", kMaze32Map},
  };
  return reg;
}

// Accepts a registry name; callers fall back to treating the string as a
// file path when this throws.
inline GridMap load_builtin_map(const std::string& name) {
  auto it = builtin_maps().find(name);
  if (it == builtin_maps().end()) {
    throw ValidationError("unknown built-in map: " + name);
  }
  return parse_map(it->second);
}

}  // namespace mgmapf
