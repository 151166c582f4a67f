#include <catch2/catch_amalgamated.hpp>

#include "mgmapf/constraints.hpp"

using namespace mgmapf;

TEST_CASE("ConstraintSet::plus leaves the original untouched") {
  ConstraintSet base;
  ConstraintSet one = base.plus(Constraint::vertex(0, 3, 5));
  REQUIRE(base.empty());
  REQUIRE(base.size() == 0);
  REQUIRE(one.size() == 1);
  REQUIRE(one.contains(Constraint::vertex(0, 3, 5)));
  REQUIRE_FALSE(base.contains(Constraint::vertex(0, 3, 5)));

  ConstraintSet two = one.plus(Constraint::edge(1, 4, 2, 3));
  REQUIRE(one.size() == 1);
  REQUIRE(two.size() == 2);
  REQUIRE(two.contains(Constraint::edge(1, 4, 2, 3)));
  REQUIRE(two.max_time() == 4);
}

TEST_CASE("vertex constraints are per-agent and per-time") {
  ConstraintSet cs = ConstraintSet{}.plus(Constraint::vertex(0, 3, 7));
  REQUIRE(cs.vertex_blocked(0, 7, 3));
  REQUIRE_FALSE(cs.vertex_blocked(0, 7, 2));
  REQUIRE_FALSE(cs.vertex_blocked(0, 6, 3));
  REQUIRE_FALSE(cs.vertex_blocked(1, 7, 3));  // other agent unaffected
}

TEST_CASE("edge constraints are directed") {
  ConstraintSet cs = ConstraintSet{}.plus(Constraint::edge(0, 5, 1, 2));
  REQUIRE(cs.edge_blocked(0, 1, 2, 5));
  REQUIRE_FALSE(cs.edge_blocked(0, 2, 1, 5));  // reverse direction allowed
  REQUIRE_FALSE(cs.edge_blocked(0, 1, 2, 4));
  REQUIRE_FALSE(cs.edge_blocked(1, 1, 2, 5));
}

TEST_CASE("is_move_safe checks arrival vertex and departure edge") {
  ConstraintSet cs;
  cs = cs.plus(Constraint::vertex(0, 4, 9));    // vertex 9 blocked at t=4
  cs = cs.plus(Constraint::edge(0, 6, 8, 9));   // edge 8->9 departing t=6

  // arriving at 9 at t=4 means departing at t=3
  REQUIRE_FALSE(is_move_safe(cs, 0, 8, 9, 3));
  REQUIRE(is_move_safe(cs, 0, 8, 9, 4));
  // the edge constraint blocks the 8->9 departure at t=6 only
  REQUIRE_FALSE(is_move_safe(cs, 0, 8, 9, 6));
  REQUIRE(is_move_safe(cs, 0, 9, 8, 6));
  REQUIRE(is_move_safe(cs, 0, 8, 9, 7));
  // waiting ignores edge constraints but not vertex ones
  REQUIRE(is_move_safe(cs, 0, 8, 8, 6));
  REQUIRE_FALSE(is_move_safe(cs, 0, 9, 9, 3));
}

TEST_CASE("compute_safe_intervals partitions time around constraints") {
  SECTION("no constraints gives one unbounded interval") {
    auto si = compute_safe_intervals(ConstraintSet{}, 0, 4);
    REQUIRE(si.size() == 1);
    REQUIRE(si[0].lo == 0);
    REQUIRE(si[0].unbounded());
  }
  SECTION("interior constraints split the line") {
    ConstraintSet cs;
    cs = cs.plus(Constraint::vertex(0, 3, 4));
    cs = cs.plus(Constraint::vertex(0, 7, 4));
    auto si = compute_safe_intervals(cs, 0, 4);
    REQUIRE(si.size() == 3);
    REQUIRE(si[0] == TimeInterval{0, 2});
    REQUIRE(si[1] == TimeInterval{4, 6});
    REQUIRE(si[2].lo == 8);
    REQUIRE(si[2].unbounded());
  }
  SECTION("adjacent constraint times merge into one gap") {
    ConstraintSet cs;
    cs = cs.plus(Constraint::vertex(0, 2, 4));
    cs = cs.plus(Constraint::vertex(0, 3, 4));
    auto si = compute_safe_intervals(cs, 0, 4);
    REQUIRE(si.size() == 2);
    REQUIRE(si[0] == TimeInterval{0, 1});
    REQUIRE(si[1].lo == 4);
  }
  SECTION("constraint at t=0 removes the leading interval") {
    ConstraintSet cs = ConstraintSet{}.plus(Constraint::vertex(0, 0, 4));
    auto si = compute_safe_intervals(cs, 0, 4);
    REQUIRE(si.size() == 1);
    REQUIRE(si[0].lo == 1);
    REQUIRE_THROWS_AS(get_earliest_si(cs, 0, 4), ValidationError);
  }
  SECTION("intervals never overlap and always end unbounded") {
    ConstraintSet cs;
    for (Time t : {1, 2, 5, 9}) cs = cs.plus(Constraint::vertex(2, t, 0));
    auto si = compute_safe_intervals(cs, 2, 0);
    for (size_t i = 0; i + 1 < si.size(); ++i) {
      REQUIRE(si[i].hi + 1 < si[i + 1].lo);
    }
    REQUIRE(si.back().unbounded());
  }
}

TEST_CASE("get_earliest_si returns the interval containing t=0") {
  ConstraintSet cs = ConstraintSet{}.plus(Constraint::vertex(0, 5, 3));
  TimeInterval si = get_earliest_si(cs, 0, 3);
  REQUIRE(si == TimeInterval{0, 4});
}

TEST_CASE("has_vertex_constraint_at_or_after scans forward only") {
  ConstraintSet cs = ConstraintSet{}.plus(Constraint::vertex(0, 6, 2));
  REQUIRE(cs.has_vertex_constraint_at_or_after(0, 2, 0));
  REQUIRE(cs.has_vertex_constraint_at_or_after(0, 2, 6));
  REQUIRE_FALSE(cs.has_vertex_constraint_at_or_after(0, 2, 7));
  REQUIRE_FALSE(cs.has_vertex_constraint_at_or_after(1, 2, 0));
}

TEST_CASE("dump_jsonl is order-insensitive and deterministic") {
  ConstraintSet a;
  a = a.plus(Constraint::vertex(1, 9, 3));
  a = a.plus(Constraint::edge(0, 2, 4, 5));
  a = a.plus(Constraint::vertex(0, 1, 3));

  ConstraintSet b;
  b = b.plus(Constraint::vertex(0, 1, 3));
  b = b.plus(Constraint::edge(0, 2, 4, 5));
  b = b.plus(Constraint::vertex(1, 9, 3));

  REQUIRE(a.dump_jsonl() == b.dump_jsonl());
  REQUIRE_FALSE(a.dump_jsonl().empty());
}
