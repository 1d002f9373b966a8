#include "gcflow/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gcflow {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

namespace {

using Tokens = std::vector<int>;

// Stable vertex colors: refine (valences, attached leg labels) by neighbor
// multisets until the partition stops splitting.
std::vector<int> refined_colors(const FlowGraph& g) {
  const int V = g.vertex_count;
  std::vector<Tokens> sig(V);
  for (int v = 0; v < V; ++v) {
    Tokens t{in_valence(g, v), out_valence(g, v)};
    std::vector<int> in_labels, out_labels;
    for (int j = 0; j < g.inputs(); ++j)
      if (g.in_legs[j] == v) in_labels.push_back(j);
    for (int i = 0; i < g.outputs(); ++i)
      if (g.out_legs[i] == v) out_labels.push_back(i);
    t.push_back(static_cast<int>(in_labels.size()));
    t.insert(t.end(), in_labels.begin(), in_labels.end());
    t.push_back(static_cast<int>(out_labels.size()));
    t.insert(t.end(), out_labels.begin(), out_labels.end());
    sig[v] = std::move(t);
  }
  auto assign = [&](const std::vector<Tokens>& sigs) {
    std::vector<Tokens> sorted(sigs);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> colors(V);
    for (int v = 0; v < V; ++v)
      colors[v] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
    return std::pair(colors, static_cast<int>(sorted.size()));
  };
  auto [colors, count] = assign(sig);
  while (true) {
    std::vector<Tokens> next(V);
    for (int v = 0; v < V; ++v) {
      Tokens t{colors[v]};
      std::vector<int> in_cols, out_cols;
      for (const Edge& e : g.edges) {
        if (e.dst == v) in_cols.push_back(colors[e.src]);
        if (e.src == v) out_cols.push_back(colors[e.dst]);
      }
      std::sort(in_cols.begin(), in_cols.end());
      std::sort(out_cols.begin(), out_cols.end());
      t.push_back(static_cast<int>(in_cols.size()));
      t.insert(t.end(), in_cols.begin(), in_cols.end());
      t.push_back(static_cast<int>(out_cols.size()));
      t.insert(t.end(), out_cols.begin(), out_cols.end());
      next[v] = std::move(t);
    }
    auto [new_colors, new_count] = assign(next);
    if (new_count == count) return colors;
    colors = std::move(new_colors);
    count = new_count;
  }
}

struct Candidate {
  std::vector<int> vmap;
  std::vector<int> emap;
  FlowGraph graph;
  Tokens tokens;
};

// Relabel g by vmap and the given tie order among parallel edges.
// tie_rank[e] orders edges with equal mapped endpoints.
Candidate materialize(const FlowGraph& g, const std::vector<int>& vmap,
                      const std::vector<int>& tie_rank) {
  Candidate c;
  c.vmap = vmap;
  const int E = g.interior_edge_count();
  std::vector<int> order(E);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int e) {
    return std::tuple(vmap[g.edges[e].src], vmap[g.edges[e].dst], tie_rank[e]);
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  c.emap.assign(E, -1);
  for (int k = 0; k < E; ++k) c.emap[order[k]] = k;

  FlowGraph h;
  h.vertex_count = g.vertex_count;
  h.edges.resize(E);
  for (int e = 0; e < E; ++e)
    h.edges[c.emap[e]] = {vmap[g.edges[e].src], vmap[g.edges[e].dst]};
  h.in_legs = g.in_legs;
  for (int& t : h.in_legs)
    if (t >= 0) t = vmap[t];
  h.out_legs = g.out_legs;
  for (int& t : h.out_legs)
    if (t >= 0) t = vmap[t];
  if (g.has_ribbon) {
    h.has_ribbon = true;
    h.ribbon_in.assign(h.vertex_count, {});
    h.ribbon_out.assign(h.vertex_count, {});
    for (int v = 0; v < g.vertex_count; ++v) {
      auto remap = [&](const std::vector<int>& flags) {
        std::vector<int> out;
        out.reserve(flags.size());
        for (int f : flags) out.push_back(is_leg_flag(f) ? f : c.emap[f]);
        return out;
      };
      h.ribbon_in[vmap[v]] = remap(g.ribbon_in[v]);
      h.ribbon_out[vmap[v]] = remap(g.ribbon_out[v]);
    }
  }

  Tokens t;
  for (int x : h.out_legs) t.push_back(x >= 0 ? x : x - g.vertex_count);
  for (int x : h.in_legs) t.push_back(x >= 0 ? x : x - g.vertex_count);
  for (const Edge& e : h.edges) {
    t.push_back(e.src);
    t.push_back(e.dst);
  }
  if (h.has_ribbon) {
    for (int v = 0; v < h.vertex_count; ++v) {
      t.push_back(-1000000);
      for (int f : h.ribbon_in[v]) t.push_back(f);
      t.push_back(-1000001);
      for (int f : h.ribbon_out[v]) t.push_back(f);
    }
  }
  c.graph = std::move(h);
  c.tokens = std::move(t);
  return c;
}

}  // namespace

CanonicalResult canonicalize(const FlowGraph& g) {
  const int V = g.vertex_count;
  const int E = g.interior_edge_count();

  if (V == 0) {
    CanonicalResult r;
    r.canonical.graph = g;
    r.canonical.auts.push_back({{}, {}});
    r.canonical.serial = serialize(g);
    r.canonical.hash = fnv1a64(r.canonical.serial);
    return r;
  }

  std::vector<int> colors = refined_colors(g);
  std::vector<std::vector<int>> classes;
  {
    std::map<int, std::vector<int>> by_color;
    for (int v = 0; v < V; ++v) by_color[colors[v]].push_back(v);
    for (auto& [c, members] : by_color) classes.push_back(members);
  }
  std::vector<int> base_offset(classes.size());
  {
    int off = 0;
    for (size_t k = 0; k < classes.size(); ++k) {
      base_offset[k] = off;
      off += static_cast<int>(classes[k].size());
    }
  }

  // Parallel-edge tie classes matter only when a ribbon structure references
  // individual edges; otherwise any stable order gives identical tokens.
  std::vector<std::vector<int>> parallel_groups;
  if (g.has_ribbon) {
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int e = 0; e < E; ++e) by_pair[{g.edges[e].src, g.edges[e].dst}].push_back(e);
    for (auto& [p, members] : by_pair)
      if (members.size() > 1) parallel_groups.push_back(members);
  }

  std::vector<Candidate> winners;
  Tokens best_tokens;
  bool have_best = false;

  std::vector<std::vector<int>> class_perm(classes);
  std::vector<int> tie_rank(E, 0);

  auto consider = [&](const std::vector<int>& vmap) {
    auto run = [&]() {
      Candidate c = materialize(g, vmap, tie_rank);
      if (!have_best || c.tokens < best_tokens) {
        best_tokens = c.tokens;
        have_best = true;
        winners.clear();
        winners.push_back(std::move(c));
      } else if (c.tokens == best_tokens) {
        winners.push_back(std::move(c));
      }
    };
    if (parallel_groups.empty()) {
      run();
      return;
    }
    // Branch over orderings inside each parallel group.
    std::vector<std::vector<int>> perms(parallel_groups);
    auto rec = [&](auto&& self, size_t k) -> void {
      if (k == perms.size()) {
        for (size_t gi = 0; gi < perms.size(); ++gi)
          for (size_t r = 0; r < perms[gi].size(); ++r) tie_rank[perms[gi][r]] = static_cast<int>(r);
        run();
        return;
      }
      std::sort(perms[k].begin(), perms[k].end());
      do {
        self(self, k + 1);
      } while (std::next_permutation(perms[k].begin(), perms[k].end()));
    };
    rec(rec, 0);
  };

  // Enumerate all orderings compatible with the color classes.
  std::vector<int> vmap(V);
  auto enumerate_classes = [&](auto&& self, size_t k) -> void {
    if (k == classes.size()) {
      consider(vmap);
      return;
    }
    std::sort(class_perm[k].begin(), class_perm[k].end());
    do {
      for (size_t r = 0; r < class_perm[k].size(); ++r)
        vmap[class_perm[k][r]] = base_offset[k] + static_cast<int>(r);
      self(self, k + 1);
    } while (std::next_permutation(class_perm[k].begin(), class_perm[k].end()));
  };
  enumerate_classes(enumerate_classes, 0);

  CanonicalResult result;
  const Candidate& win = winners.front();
  result.vmap = win.vmap;
  result.emap = win.emap;
  result.canonical.graph = win.graph;
  result.canonical.serial = serialize(win.graph);
  result.canonical.hash = fnv1a64(result.canonical.serial);

  // Automorphisms of the canonical graph: compose each winner with the
  // inverse of the chosen one, then (in the non-ribbon case) multiply by all
  // permutations inside parallel-edge groups of the canonical graph.
  std::vector<int> vinv(V), einv(E);
  for (int v = 0; v < V; ++v) vinv[win.vmap[v]] = v;
  for (int e = 0; e < E; ++e) einv[win.emap[e]] = e;

  std::vector<Automorphism> base_auts;
  for (const Candidate& c : winners) {
    Automorphism a;
    a.vperm.resize(V);
    a.eperm.resize(E);
    for (int v = 0; v < V; ++v) a.vperm[v] = c.vmap[vinv[v]];
    for (int e = 0; e < E; ++e) a.eperm[e] = c.emap[einv[e]];
    base_auts.push_back(std::move(a));
  }

  if (!g.has_ribbon && E > 0) {
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int e = 0; e < E; ++e) {
      const Edge& ed = result.canonical.graph.edges[e];
      by_pair[{ed.src, ed.dst}].push_back(e);
    }
    std::vector<std::vector<int>> groups;
    for (auto& [p, members] : by_pair)
      if (members.size() > 1) groups.push_back(members);
    if (!groups.empty()) {
      std::vector<std::vector<int>> swaps{std::vector<int>(E)};
      std::iota(swaps[0].begin(), swaps[0].end(), 0);
      for (const auto& grp : groups) {
        std::vector<std::vector<int>> next;
        std::vector<int> perm(grp);
        std::sort(perm.begin(), perm.end());
        do {
          for (const auto& base : swaps) {
            std::vector<int> combined = base;
            for (size_t r = 0; r < grp.size(); ++r) combined[grp[r]] = perm[r];
            next.push_back(std::move(combined));
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        swaps = std::move(next);
      }
      std::vector<Automorphism> full;
      for (const Automorphism& a : base_auts) {
        for (const auto& sw : swaps) {
          Automorphism b = a;
          for (int e = 0; e < E; ++e) b.eperm[e] = sw[a.eperm[e]];
          full.push_back(std::move(b));
        }
      }
      base_auts = std::move(full);
    }
  }
  result.canonical.auts = std::move(base_auts);
  return result;
}

std::string canonical_serial(const FlowGraph& g) { return canonicalize(g).canonical.serial; }

}  // namespace gcflow
