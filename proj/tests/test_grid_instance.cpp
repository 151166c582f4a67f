#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mgmapf/builtin_maps.hpp"
#include "mgmapf/grid_map.hpp"
#include "mgmapf/instance.hpp"
#include "mgmapf/io.hpp"

using namespace mgmapf;

TEST_CASE("parse_map reads a minimal map") {
  GridMap g = parse_map("type octile\nheight 2\nwidth 2\nmap\n.@\n..\n");
  REQUIRE(g.height == 2);
  REQUIRE(g.width == 2);
  REQUIRE(g.vertex_count() == 3);
  REQUIRE(g.passable(0, 0));
  REQUIRE_FALSE(g.passable(0, 1));
  REQUIRE(g.vertex_at(0, 1) == -1);
  // vertex ids are row-major over passable cells
  REQUIRE(g.vertex_at(0, 0) == 0);
  REQUIRE(g.vertex_at(1, 0) == 1);
  REQUIRE(g.vertex_at(1, 1) == 2);
}

TEST_CASE("parse_map accepts alternate terrain characters and CRLF") {
  GridMap g = parse_map("type octile\r\nheight 1\r\nwidth 4\r\nmap\r\n.GT@\r\n");
  REQUIRE(g.vertex_count() == 2);  // '.' and 'G' passable, 'T' and '@' blocked
  REQUIRE(g.passable(0, 1));
  REQUIRE_FALSE(g.passable(0, 2));
}

TEST_CASE("parse_map rejects malformed input with line positions") {
  REQUIRE_THROWS_AS(parse_map(""), ParseError);
  REQUIRE_THROWS_WITH(parse_map("typo octile\nheight 1\nwidth 1\nmap\n.\n"),
                      Catch::Matchers::ContainsSubstring("line 1"));
  REQUIRE_THROWS_WITH(parse_map("type octile\nheight x\nwidth 1\nmap\n.\n"),
                      Catch::Matchers::ContainsSubstring("line 2"));
  REQUIRE_THROWS_WITH(parse_map("type octile\nheight 1\nwidth 0\nmap\n.\n"),
                      Catch::Matchers::ContainsSubstring("line 3"));
  REQUIRE_THROWS_WITH(parse_map("type octile\nheight 1\nwidth 2\nmapp\n..\n"),
                      Catch::Matchers::ContainsSubstring("line 4"));
  REQUIRE_THROWS_WITH(parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n.\n"),
                      Catch::Matchers::ContainsSubstring("line 6"));
  // unknown character reports row line and column
  REQUIRE_THROWS_WITH(parse_map("type octile\nheight 1\nwidth 3\nmap\n.x.\n"),
                      Catch::Matchers::ContainsSubstring("column 2"));
  // missing terrain row
  REQUIRE_THROWS_AS(parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n"), ParseError);
}

TEST_CASE("serialize_map round-trips") {
  for (const auto& [name, text] : builtin_maps()) {
    GridMap g = parse_map(text);
    REQUIRE(serialize_map(g) == text);
    GridMap g2 = parse_map(serialize_map(g));
    REQUIRE(g2.rows == g.rows);
  }
}

TEST_CASE("adjacency is sorted, symmetric, and loop-free") {
  GridMap g = load_builtin_map("crowd_a");
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    REQUIRE(std::is_sorted(g.adj[v].begin(), g.adj[v].end()));
    for (VertexId u : g.adj[v]) {
      REQUIRE(u != v);
      REQUIRE(std::binary_search(g.adj[u].begin(), g.adj[u].end(), v));
      auto [rv, cv] = g.cell_of(v);
      auto [ru, cu] = g.cell_of(u);
      REQUIRE(std::abs(rv - ru) + std::abs(cv - cu) == 1);
    }
  }
}

TEST_CASE("neighbors_with_wait inserts the vertex itself in order") {
  GridMap g = parse_map("type octile\nheight 1\nwidth 3\nmap\n...\n");
  auto nb = neighbors_with_wait(g, 1);
  REQUIRE(nb == std::vector<VertexId>{0, 1, 2});
  REQUIRE(std::is_sorted(nb.begin(), nb.end()));
}

TEST_CASE("bfs_distances matches hand values and flags disconnection") {
  GridMap g = parse_map("type octile\nheight 1\nwidth 5\nmap\n..@..\n");
  auto d = bfs_distances(g, 0);
  REQUIRE(d[0] == 0);
  REQUIRE(d[1] == 1);
  REQUIRE(d[2] == kUnreachable);  // right side of the wall
  REQUIRE(d[3] == kUnreachable);
}

TEST_CASE("built-in maps parse and match the files on disk") {
  for (const auto& [name, text] : builtin_maps()) {
    GridMap g = parse_map(text);
    REQUIRE(g.vertex_count() > 0);
    std::string disk = read_text_file(std::string(MGMAPF_SOURCE_DIR) + "/maps/" + name + ".map");
    REQUIRE(disk == std::string(text));
  }
  REQUIRE_THROWS_AS(load_builtin_map("nope"), ValidationError);
}

TEST_CASE("load_instance reads agents and validates them") {
  GridMap g = load_builtin_map("crowd_a");
  std::string text = R"({
    "map": "crowd_a",
    "agents": [
      {"start": [0, 0], "goals": [[4, 4], [0, 4]]},
      {"start": [4, 0], "goals": [[2, 2]]}
    ]
  })";
  Instance inst = load_instance(text, g);
  REQUIRE(inst.num_agents() == 2);
  REQUIRE(inst.agents[0].start == g.vertex_at(0, 0));
  REQUIRE(inst.agents[0].goals.size() == 2);
  REQUIRE(inst.agents[1].goals[0] == g.vertex_at(2, 2));
}

TEST_CASE("load_instance rejects malformed and invalid tasks") {
  GridMap g = load_builtin_map("crowd_a");
  REQUIRE_THROWS_AS(load_instance("{", g), ParseError);
  REQUIRE_THROWS_AS(load_instance("[]", g), ParseError);
  REQUIRE_THROWS_AS(load_instance(R"({"agents": 3})", g), ParseError);
  // missing goals
  REQUIRE_THROWS_AS(load_instance(R"({"agents": [{"start": [0,0]}]})", g), ParseError);
  // empty goal list
  REQUIRE_THROWS_AS(load_instance(R"({"agents": [{"start": [0,0], "goals": []}]})", g),
                    ValidationError);
  // start on an obstacle (1,1 is a pillar)
  REQUIRE_THROWS_WITH(
      load_instance(R"({"agents": [{"start": [1,1], "goals": [[0,0]]}]})", g),
      Catch::Matchers::ContainsSubstring("agent 0"));
  // goal out of bounds
  REQUIRE_THROWS_AS(load_instance(R"({"agents": [{"start": [0,0], "goals": [[9,0]]}]})", g),
                    ValidationError);
  // duplicate starts across agents
  REQUIRE_THROWS_WITH(load_instance(R"({"agents": [
        {"start": [0,0], "goals": [[2,2]]},
        {"start": [0,0], "goals": [[4,4]]}]})",
                                    g),
                      Catch::Matchers::ContainsSubstring("agent 1"));
  // duplicate goals within one agent
  REQUIRE_THROWS_AS(
      load_instance(R"({"agents": [{"start": [0,0], "goals": [[2,2],[2,2]]}]})", g),
      ValidationError);
}

TEST_CASE("serialize_instance is deterministic and round-trips") {
  GridMap g = load_builtin_map("crowd_b");
  Instance inst;
  inst.map_ref = "crowd_b";
  inst.agents.push_back({g.vertex_at(3, 0), {g.vertex_at(0, 1), g.vertex_at(4, 2)}});
  inst.agents.push_back({g.vertex_at(2, 2), {g.vertex_at(0, 1)}});
  std::string a = serialize_instance(inst, g);
  std::string b = serialize_instance(inst, g);
  REQUIRE(a == b);
  Instance back = load_instance(a, g);
  REQUIRE(back.map_ref == inst.map_ref);
  REQUIRE(back.agents.size() == inst.agents.size());
  for (size_t i = 0; i < back.agents.size(); ++i) {
    REQUIRE(back.agents[i].start == inst.agents[i].start);
    REQUIRE(back.agents[i].goals == inst.agents[i].goals);
  }
}
