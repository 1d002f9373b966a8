#include <random>

#include "doctest.h"
#include "gcflow/canonical.hpp"

using namespace gcflow;

namespace {

// Relabel vertices and shuffle the edge list with a seeded generator.
FlowGraph random_relabel(const FlowGraph& g, std::mt19937& rng) {
  std::vector<int> vperm(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v) vperm[v] = v;
  std::shuffle(vperm.begin(), vperm.end(), rng);
  FlowGraph h;
  h.vertex_count = g.vertex_count;
  std::vector<int> eorder(g.interior_edge_count());
  for (int e = 0; e < g.interior_edge_count(); ++e) eorder[e] = e;
  std::shuffle(eorder.begin(), eorder.end(), rng);
  std::vector<int> emap(g.interior_edge_count());
  for (size_t k = 0; k < eorder.size(); ++k) {
    emap[eorder[k]] = static_cast<int>(k);
    h.edges.push_back({vperm[g.edges[eorder[k]].src], vperm[g.edges[eorder[k]].dst]});
  }
  h.in_legs = g.in_legs;
  for (int& t : h.in_legs)
    if (t >= 0) t = vperm[t];
  h.out_legs = g.out_legs;
  for (int& t : h.out_legs)
    if (t >= 0) t = vperm[t];
  if (g.has_ribbon) {
    h.has_ribbon = true;
    h.ribbon_in.assign(h.vertex_count, {});
    h.ribbon_out.assign(h.vertex_count, {});
    for (int v = 0; v < g.vertex_count; ++v) {
      auto remap = [&](const std::vector<int>& flags) {
        std::vector<int> out;
        for (int f : flags) out.push_back(is_leg_flag(f) ? f : emap[f]);
        return out;
      };
      h.ribbon_in[vperm[v]] = remap(g.ribbon_in[v]);
      h.ribbon_out[vperm[v]] = remap(g.ribbon_out[v]);
    }
  }
  return h;
}

// Five vertices, two parallel length-2 paths from the bottom fork to the two
// top vertices; its flip automorphism reverses orientation (see orientation
// tests), here we only need the automorphism group.
FlowGraph doubled_diamond() {
  FlowGraph g;
  g.vertex_count = 5;  // 0 = bottom, 1,2 = middle, 3,4 = top
  g.in_legs = {0};
  g.out_legs = {3, 4};
  g.edges = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}};
  return g;
}

FlowGraph double_edge_11() {
  FlowGraph g;
  g.vertex_count = 2;
  g.in_legs = {0};
  g.out_legs = {1};
  g.edges = {{0, 1}, {0, 1}};
  return g;
}

}  // namespace

TEST_CASE("corolla canonical form is itself with trivial automorphisms") {
  auto r = canonicalize(corolla(2, 2));
  CHECK(r.canonical.graph == corolla(2, 2));
  CHECK(r.canonical.auts.size() == 1);
}

TEST_CASE("canonical form is stable under relabeling") {
  std::mt19937 rng(12345);
  std::vector<FlowGraph> samples = {doubled_diamond(), double_edge_11()};
  {
    FlowGraph rc = corolla(2, 3);
    auto exps = raw_expansions(rc);
    for (auto& e : exps) samples.push_back(e.graph);
  }
  for (const FlowGraph& g : samples) {
    auto base = canonicalize(g);
    for (int trial = 0; trial < 20; ++trial) {
      FlowGraph h = random_relabel(g, rng);
      auto r = canonicalize(h);
      CHECK(r.canonical.serial == base.canonical.serial);
      CHECK(r.canonical.graph == base.canonical.graph);
    }
    // Canonicalizing the canonical graph is the identity.
    auto again = canonicalize(base.canonical.graph);
    CHECK(again.canonical.graph == base.canonical.graph);
  }
}

TEST_CASE("doubled diamond has the order-two flip") {
  auto r = canonicalize(doubled_diamond());
  CHECK(r.canonical.auts.size() == 2);
}

TEST_CASE("double edge automorphisms include the parallel swap") {
  auto r = canonicalize(double_edge_11());
  REQUIRE(r.canonical.auts.size() == 2);
  bool has_swap = false;
  for (const auto& a : r.canonical.auts)
    has_swap |= (a.eperm[0] == 1 && a.eperm[1] == 0);
  CHECK(has_swap);
}

TEST_CASE("vmap and emap really map onto the canonical graph") {
  std::mt19937 rng(99);
  FlowGraph g = random_relabel(doubled_diamond(), rng);
  auto r = canonicalize(g);
  for (int e = 0; e < g.interior_edge_count(); ++e) {
    const Edge& orig = g.edges[e];
    const Edge& mapped = r.canonical.graph.edges[r.emap[e]];
    CHECK(mapped.src == r.vmap[orig.src]);
    CHECK(mapped.dst == r.vmap[orig.dst]);
  }
}

TEST_CASE("ribbon structures distinguish classes") {
  FlowGraph g = double_edge_11();
  g.has_ribbon = true;
  g.ribbon_in = {{in_leg_flag(0)}, {0, 1}};
  g.ribbon_out = {{0, 1}, {out_leg_flag(0)}};
  FlowGraph h = g;
  h.ribbon_in[1] = {1, 0};
  auto rg = canonicalize(g);
  auto rh = canonicalize(h);
  CHECK(rg.canonical.serial != rh.canonical.serial);
  // Swapping both orders at once is the same class again.
  FlowGraph k = g;
  k.ribbon_out[0] = {1, 0};
  k.ribbon_in[1] = {1, 0};
  auto rk = canonicalize(k);
  CHECK(rk.canonical.serial == rg.canonical.serial);
  // Ribbon rigidifies: no automorphisms besides the identity here.
  CHECK(rg.canonical.auts.size() == 1);
}

TEST_CASE("automorphism sanity on every sample") {
  std::vector<FlowGraph> samples = {doubled_diamond(), double_edge_11(), corolla(3, 2)};
  for (const FlowGraph& g : samples) {
    auto r = canonicalize(g);
    const FlowGraph& c = r.canonical.graph;
    for (const auto& a : r.canonical.auts) {
      for (int e = 0; e < c.interior_edge_count(); ++e) {
        CHECK(c.edges[a.eperm[e]].src == a.vperm[c.edges[e].src]);
        CHECK(c.edges[a.eperm[e]].dst == a.vperm[c.edges[e].dst]);
      }
      for (int t : c.in_legs)
        if (t >= 0) CHECK(a.vperm[t] == a.vperm[t]);
    }
  }
}
