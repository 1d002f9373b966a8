#include "doctest.h"
#include "gcflow/flow_graph.hpp"

using namespace gcflow;

namespace {

FlowGraph cap_over_cup() {
  // Vertex 0 has both in-legs and one edge up to vertex 1 carrying both out-legs.
  FlowGraph g;
  g.vertex_count = 2;
  g.in_legs = {0, 0};
  g.out_legs = {1, 1};
  g.edges = {{0, 1}};
  return g;
}

FlowGraph double_edge_11() {
  // One in-leg into A, two parallel edges A -> B, one out-leg from B.
  FlowGraph g;
  g.vertex_count = 2;
  g.in_legs = {0};
  g.out_legs = {1};
  g.edges = {{0, 1}, {0, 1}};
  return g;
}

}  // namespace

TEST_CASE("corolla is the minimal valid graph") {
  CHECK(validate(corolla(2, 2)).ok());
  CHECK(validate(corolla(1, 2)).ok());
}

TEST_CASE("valence two vertex is rejected") {
  FlowGraph g = corolla(1, 1);
  auto rep = validate(g);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (auto& [v, msg] : rep.violations) found |= (v == Violation::valence_too_small);
  CHECK(found);
}

TEST_CASE("directed two-cycle is rejected") {
  FlowGraph g;
  g.vertex_count = 2;
  g.in_legs = {0, 1};
  g.out_legs = {0, 1};
  g.edges = {{0, 1}, {1, 0}};
  auto rep = validate(g);
  bool found = false;
  for (auto& [v, msg] : rep.violations) found |= (v == Violation::directed_cycle);
  CHECK(found);
}

TEST_CASE("gradings of corollas") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      if (m + n < 3) continue;
      auto gr = gradings(corolla(m, n));
      CHECK(gr.cmp == 0);
      CHECK(gr.gen == 0);
      CHECK(gr.pth == m * n);
      CHECK(gr.grad == 0);
    }
  }
}

TEST_CASE("forbidden configuration has pth below m*n") {
  // Two vertices u, v; edge v -> u; u also takes input 1, v also emits
  // output 2; inputs 1,2 and outputs 1,2 as in the two-vertex bad-edge shape.
  FlowGraph g;
  g.vertex_count = 2;  // 0 = u (upper), 1 = v (lower)
  g.in_legs = {0, 1};
  g.out_legs = {0, 1};
  g.edges = {{1, 0}};
  REQUIRE(validate(g).ok());
  auto gr = gradings(g);
  CHECK(gr.pth == 3);
  CHECK(gr.pth < 4);
  CHECK(has_bad_edge(g));
}

TEST_CASE("double edge graph gradings") {
  auto g = double_edge_11();
  REQUIRE(validate(g).ok());
  auto gr = gradings(g);
  CHECK(gr.gen == 1);
  CHECK(gr.cmp == 0);
  CHECK(gr.grad == -1);
  CHECK(gr.pth == 2);
}

TEST_CASE("reducedness") {
  CHECK(is_reduced(corolla(2, 2)));
  CHECK_FALSE(is_reduced(cap_over_cup()));
  CHECK(is_reduced(double_edge_11()));
}

TEST_CASE("through strands validate and grade") {
  FlowGraph g = through_strands({1, 0});
  CHECK(validate(g).ok());
  auto gr = gradings(g);
  CHECK(gr.cmp == 1);
  CHECK(gr.gen == 0);
  CHECK(gr.pth == 2);
}

TEST_CASE("contracting the cap-over-cup edge yields the corolla") {
  auto res = contract_edge(cap_over_cup(), 0);
  REQUIRE(res.result.has_value());
  const FlowGraph& h = res.result->graph;
  CHECK(h.vertex_count == 1);
  CHECK(h.edges.empty());
  CHECK(h == corolla(2, 2));
}

TEST_CASE("contracting a parallel edge is rejected") {
  auto res = contract_edge(double_edge_11(), 0);
  CHECK_FALSE(res.result.has_value());
  CHECK(res.failure == ContractionFailure::loop);
}

TEST_CASE("corolla(1,2) has no expansions") {
  CHECK(raw_expansions(corolla(1, 2)).empty());
}

TEST_CASE("every raw expansion is valid and contracts back") {
  FlowGraph g = corolla(2, 2);
  auto exps = raw_expansions(g);
  CHECK(!exps.empty());
  for (const auto& ex : exps) {
    REQUIRE(validate(ex.graph).ok());
    auto back = contract_edge(ex.graph, ex.new_edge);
    REQUIRE(back.result.has_value());
    CHECK(back.result->graph == g);
  }
}

TEST_CASE("ribbon corolla expansions match the three-term count") {
  FlowGraph g = corolla(2, 2);
  g.has_ribbon = true;
  g.ribbon_in = {{in_leg_flag(0), in_leg_flag(1)}};
  g.ribbon_out = {{out_leg_flag(0), out_leg_flag(1)}};
  REQUIRE(validate(g).ok());
  auto exps = raw_expansions(g);
  CHECK(exps.size() == 3);
  for (const auto& ex : exps) {
    REQUIRE(validate(ex.graph).ok());
    auto back = contract_edge(ex.graph, ex.new_edge);
    REQUIRE(back.result.has_value());
    CHECK(back.result->graph == g);
  }
}

TEST_CASE("serialize format") {
  CHECK(serialize(corolla(2, 2)) == "2 2 | 0 0 | 0 0 | e:");
  CHECK(serialize(cap_over_cup()) == "2 2 | 1 1 | 0 0 | e:(0>1)");
  CHECK(serialize(through_strands({0, 1})) == "2 2 | t1 t2 | t1 t2 | e:");
}
