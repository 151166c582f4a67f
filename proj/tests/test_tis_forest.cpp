#include <catch2/catch_amalgamated.hpp>

#include "mgmapf/tis_forest.hpp"
#include "oracles.hpp"

using namespace mgmapf;

namespace {

GridMap two_cells() { return parse_map("type octile\nheight 1\nwidth 2\nmap\n..\n"); }

}  // namespace

TEST_CASE("compute_backward_B carves constraints out of the departure window") {
  // u = vertex 0, parent vertex = 1, adjacent on a 1x2 strip
  ConstraintSet cons;
  cons = cons.plus(Constraint::vertex(0, 3, 0));   // u unsafe at t=3
  cons = cons.plus(Constraint::edge(0, 6, 0, 1));  // u->pv departure at t=6 banned

  auto b = compute_backward_B(cons, 0, 0, 1, TimeInterval{2, 8});
  REQUIRE(b == std::vector<TimeInterval>{{1, 2}, {4, 5}, {7, 7}});
}

TEST_CASE("compute_backward_B window edge cases") {
  GridMap g = two_cells();
  (void)g;
  SECTION("empty when the parent interval starts at t=0 and ends immediately") {
    auto b = compute_backward_B(ConstraintSet{}, 0, 0, 1, TimeInterval{0, 0});
    REQUIRE(b.empty());
  }
  SECTION("window is clipped at t=0") {
    auto b = compute_backward_B(ConstraintSet{}, 0, 0, 1, TimeInterval{0, 4});
    REQUIRE(b == std::vector<TimeInterval>{{0, 3}});
  }
  SECTION("unbounded parent yields an unbounded tail") {
    auto b = compute_backward_B(ConstraintSet{}, 0, 0, 1, TimeInterval{5, kTimeInf});
    REQUIRE(b.size() == 1);
    REQUIRE(b[0].lo == 4);
    REQUIRE(b[0].unbounded());
  }
  SECTION("waiting in place ignores edge constraints") {
    ConstraintSet cons = ConstraintSet{}.plus(Constraint::edge(0, 6, 0, 0));
    auto b = compute_backward_B(cons, 0, 0, 0, TimeInterval{2, 8});
    REQUIRE(b == std::vector<TimeInterval>{{1, 7}});
  }
  SECTION("edge constraints for other agents are ignored") {
    ConstraintSet cons = ConstraintSet{}.plus(Constraint::edge(1, 6, 0, 1));
    auto b = compute_backward_B(cons, 0, 0, 1, TimeInterval{2, 8});
    REQUIRE(b == std::vector<TimeInterval>{{1, 7}});
  }
}

TEST_CASE("query_length on an open strip equals walking distance") {
  GridMap g = parse_map("type octile\nheight 1\nwidth 4\nmap\n....\n");
  TisTree tree(g, ConstraintSet{}, 0, 3, TimeInterval{0, kTimeInf});
  for (VertexId v = 0; v < 4; ++v) {
    REQUIRE(tree.query_length(v, 0) == 3 - v);
    REQUIRE(tree.query_length(v, 17) == 3 - v);  // cost is elapsed, not arrival
  }
}

TEST_CASE("query_length counts forced waiting") {
  // reaching vertex 1 is banned at t=1, so from vertex 0 the agent waits once
  GridMap g = two_cells();
  ConstraintSet cons = ConstraintSet{}.plus(Constraint::vertex(0, 1, 1));
  TisTree tree(g, cons, 0, 1, compute_safe_intervals(cons, 0, 1).back());
  REQUIRE(tree.query_length(0, 0) == 2);
  REQUIRE(tree.query_length(0, 1) == 1);
  // standing on the goal before the target interval: step off and back on
  REQUIRE(tree.query_length(1, 0) == 2);
}

TEST_CASE("query_length is unreachable across a wall and exactly -1") {
  GridMap g = parse_map("type octile\nheight 1\nwidth 5\nmap\n..@..\n");
  TisTree tree(g, ConstraintSet{}, 0, g.vertex_at(0, 4), TimeInterval{0, kTimeInf});
  REQUIRE(tree.query_length(g.vertex_at(0, 0), 0) == kUnreachable);
  REQUIRE(tree.query_length(g.vertex_at(0, 1), 3) == -1);
  REQUIRE(tree.query_length(g.vertex_at(0, 3), 0) == 1);
}

TEST_CASE("tree lengths match the time-expanded oracle on random scenarios") {
  PortableRng rng(20260817);
  for (int round = 0; round < 30; ++round) {
    GridMap g = testor::random_map(rng, 6, 6, 25);
    ConstraintSet cons = testor::random_constraints(rng, g, 0, 8, 20);
    VertexId goal = testor::random_vertex(rng, g);
    const Time t_q = 30;
    const Time t_cap = t_q + cons.max_time() + g.vertex_count() + 2;
    for (const TimeInterval& gsi : compute_safe_intervals(cons, 0, goal)) {
      TisTree tree(g, cons, 0, goal, gsi);
      auto oracle = testor::reverse_spacetime_bfs(g, cons, 0, goal, gsi, t_q, t_cap);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (Time t = 0; t <= t_q; ++t) {
          CAPTURE(round, v, t, gsi.lo, gsi.hi);
          REQUIRE(tree.query_length(v, t) == oracle[v][t]);
        }
      }
    }
  }
}

TEST_CASE("waiting longer inside one safe interval never helps") {
  PortableRng rng(7);
  for (int round = 0; round < 20; ++round) {
    GridMap g = testor::random_map(rng, 5, 5, 20);
    ConstraintSet cons = testor::random_constraints(rng, g, 0, 6, 15);
    VertexId goal = testor::random_vertex(rng, g);
    TisTree tree(g, cons, 0, goal, compute_safe_intervals(cons, 0, goal).back());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (const TimeInterval& si : compute_safe_intervals(cons, 0, v)) {
        Time t1 = si.lo;
        Time t2 = std::min<Time>(si.hi, si.lo + 5);
        int q1 = tree.query_length(v, t1);
        int q2 = tree.query_length(v, t2);
        if (is_reachable(q2)) {
          REQUIRE(is_reachable(q1));
          REQUIRE(q1 <= (t2 - t1) + q2);
        }
      }
    }
  }
}

TEST_CASE("live nodes partition the safe intervals of every vertex") {
  PortableRng rng(99);
  for (int round = 0; round < 15; ++round) {
    GridMap g = testor::random_map(rng, 6, 6, 25);
    ConstraintSet cons = testor::random_constraints(rng, g, 0, 10, 20);
    VertexId goal = testor::random_vertex(rng, g);
    for (const TimeInterval& gsi : compute_safe_intervals(cons, 0, goal)) {
      TisTree tree(g, cons, 0, goal, gsi);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        // fragments at v, merged wherever they touch, must reproduce the
        // safe intervals exactly
        std::vector<TimeInterval> merged;
        for (int id : tree.nodes_at(v)) {
          const TisNode& nd = tree.node(id);
          REQUIRE_FALSE(nd.retired);
          REQUIRE(nd.v == v);
          if (!merged.empty() && merged.back().hi + 1 == nd.iv.lo) {
            merged.back().hi = nd.iv.hi;
          } else {
            merged.push_back(nd.iv);
          }
        }
        REQUIRE(merged == compute_safe_intervals(cons, 0, v));
      }
    }
  }
}

TEST_CASE("extract_path produces a valid walk ending inside the goal interval") {
  PortableRng rng(4242);
  for (int round = 0; round < 20; ++round) {
    GridMap g = testor::random_map(rng, 6, 6, 25);
    ConstraintSet cons = testor::random_constraints(rng, g, 0, 8, 18);
    VertexId goal = testor::random_vertex(rng, g);
    TimeInterval gsi = compute_safe_intervals(cons, 0, goal).back();
    TisTree tree(g, cons, 0, goal, gsi);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (Time t : {Time{0}, Time{5}, Time{13}}) {
        int q = tree.query_length(v, t);
        if (!is_reachable(q)) {
          REQUIRE(tree.extract_path(v, t).empty());
          continue;
        }
        auto path = tree.extract_path(v, t);
        REQUIRE(static_cast<int>(path.size()) == q + 1);
        REQUIRE(path.front() == v);
        REQUIRE(path.back() == goal);
        REQUIRE(gsi.contains(t + q));
        for (int k = 0; k + 1 < static_cast<int>(path.size()); ++k) {
          VertexId a = path[k], b = path[k + 1];
          bool adjacent = std::binary_search(g.adj[a].begin(), g.adj[a].end(), b);
          REQUIRE((a == b || adjacent));
          REQUIRE(is_move_safe(cons, 0, a, b, t + k));
        }
        REQUIRE_FALSE(cons.vertex_blocked(0, path.front(), t));
      }
    }
  }
}

TEST_CASE("dump_json is deterministic for identical inputs") {
  GridMap g = load_builtin_map("crowd_a");
  ConstraintSet cons;
  cons = cons.plus(Constraint::vertex(0, 4, 2));
  cons = cons.plus(Constraint::edge(0, 2, 0, 1));
  TimeInterval gsi = compute_safe_intervals(cons, 0, 10).back();
  TisTree a(g, cons, 0, 10, gsi);
  TisTree b(g, cons, 0, 10, gsi);
  REQUIRE(a.dump_json() == b.dump_json());
  REQUIRE(a.dump_json().find("\"v\":") != std::string::npos);
}

TEST_CASE("a forest holds one tree per goal safe interval") {
  GridMap g = load_builtin_map("crowd_a");
  ConstraintSet cons;
  cons = cons.plus(Constraint::vertex(0, 3, 5));
  cons = cons.plus(Constraint::vertex(0, 9, 5));
  TisForest forest(g, cons, 0, {5, 12});
  REQUIRE(forest.goal_count() == 2);
  REQUIRE(forest.goal_vertex(0) == 5);
  REQUIRE(forest.goal_vertex(1) == 12);
  REQUIRE(forest.gsi_count(0) == 3);  // [0,2], [4,8], [10,inf)
  REQUIRE(forest.gsi_count(1) == 1);
  REQUIRE(forest.gsi(0, 0) == TimeInterval{0, 2});
  REQUIRE(forest.gsi(0, 1) == TimeInterval{4, 8});
  REQUIRE(forest.gsi(0, 2).unbounded());
  REQUIRE(forest.gsi(1, 0).unbounded());
  REQUIRE(forest.tree(0, 1).goal_vertex() == 5);
  // every tree's root interval is its goal interval
  REQUIRE(forest.tree(0, 1).gsi() == TimeInterval{4, 8});
}
