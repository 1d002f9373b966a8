#include "gcflow/flow_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gcflow {

namespace {

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool topological_order(const FlowGraph& g, std::vector<int>* order_out) {
  std::vector<int> indeg(g.vertex_count, 0);
  for (const Edge& e : g.edges) indeg[e.dst]++;
  std::vector<int> stack;
  for (int v = 0; v < g.vertex_count; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  std::vector<int> order;
  order.reserve(g.vertex_count);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const Edge& e : g.edges)
      if (e.src == v && --indeg[e.dst] == 0) stack.push_back(e.dst);
  }
  if (order_out) *order_out = order;
  return static_cast<int>(order.size()) == g.vertex_count;
}

}  // namespace

ValidationReport validate(const FlowGraph& g) {
  ValidationReport rep;
  auto add = [&rep](Violation v, std::string msg) {
    rep.violations.emplace_back(v, std::move(msg));
  };

  const int m = g.outputs(), n = g.inputs();
  if (m < 1 || n < 1) add(Violation::no_legs, "m and n must both be at least 1");

  bool targets_ok = true;
  for (int j = 0; j < n; ++j) {
    int t = g.in_legs[j];
    if (t >= 0) {
      if (t >= g.vertex_count) {
        add(Violation::bad_leg_target, "input leg " + std::to_string(j + 1) + " out of range");
        targets_ok = false;
      }
    } else {
      int i = ~t;
      if (i < 0 || i >= m || g.out_legs[i] != ~j) {
        add(Violation::through_pair_mismatch,
            "input leg " + std::to_string(j + 1) + " has inconsistent through pairing");
        targets_ok = false;
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    int t = g.out_legs[i];
    if (t >= 0) {
      if (t >= g.vertex_count) {
        add(Violation::bad_leg_target, "output leg " + std::to_string(i + 1) + " out of range");
        targets_ok = false;
      }
    } else {
      int j = ~t;
      if (j < 0 || j >= n || g.in_legs[j] != ~i) {
        add(Violation::through_pair_mismatch,
            "output leg " + std::to_string(i + 1) + " has inconsistent through pairing");
        targets_ok = false;
      }
    }
  }
  for (const Edge& e : g.edges) {
    if (e.src < 0 || e.src >= g.vertex_count || e.dst < 0 || e.dst >= g.vertex_count) {
      add(Violation::bad_leg_target, "edge endpoint out of range");
      targets_ok = false;
    } else if (e.src == e.dst) {
      add(Violation::self_loop, "edge is a loop, a directed cycle of length one");
    }
  }
  if (!targets_ok) return rep;

  if (!topological_order(g, nullptr)) add(Violation::directed_cycle, "directed cycle found");

  for (int v = 0; v < g.vertex_count; ++v) {
    int iv = in_valence(g, v), ov = out_valence(g, v);
    if (iv + ov < 3)
      add(Violation::valence_too_small,
          "vertex " + std::to_string(v) + " has valence " + std::to_string(iv + ov));
    if (iv < 1) add(Violation::missing_input, "vertex " + std::to_string(v) + " has no input");
    if (ov < 1) add(Violation::missing_output, "vertex " + std::to_string(v) + " has no output");
  }

  if (g.has_ribbon) {
    if (static_cast<int>(g.ribbon_in.size()) != g.vertex_count ||
        static_cast<int>(g.ribbon_out.size()) != g.vertex_count) {
      add(Violation::ribbon_orders_mismatch, "ribbon orders missing for some vertex");
    } else {
      for (int v = 0; v < g.vertex_count; ++v) {
        auto want_in = in_flags(g, v);
        auto got_in = g.ribbon_in[v];
        std::sort(got_in.begin(), got_in.end());
        std::sort(want_in.begin(), want_in.end());
        auto want_out = out_flags(g, v);
        auto got_out = g.ribbon_out[v];
        std::sort(got_out.begin(), got_out.end());
        std::sort(want_out.begin(), want_out.end());
        if (got_in != want_in || got_out != want_out)
          add(Violation::ribbon_orders_mismatch,
              "ribbon orders at vertex " + std::to_string(v) + " do not list its flags");
      }
    }
  }
  return rep;
}

bool is_valid(const FlowGraph& g) { return validate(g).ok(); }

std::vector<int> in_flags(const FlowGraph& g, int v) {
  std::vector<int> flags;
  for (int j = 0; j < g.inputs(); ++j)
    if (g.in_legs[j] == v) flags.push_back(in_leg_flag(j));
  for (int e = 0; e < g.interior_edge_count(); ++e)
    if (g.edges[e].dst == v) flags.push_back(e);
  return flags;
}

std::vector<int> out_flags(const FlowGraph& g, int v) {
  std::vector<int> flags;
  for (int i = 0; i < g.outputs(); ++i)
    if (g.out_legs[i] == v) flags.push_back(out_leg_flag(i));
  for (int e = 0; e < g.interior_edge_count(); ++e)
    if (g.edges[e].src == v) flags.push_back(e);
  return flags;
}

int in_valence(const FlowGraph& g, int v) {
  int c = 0;
  for (int t : g.in_legs) c += (t == v);
  for (const Edge& e : g.edges) c += (e.dst == v);
  return c;
}

int out_valence(const FlowGraph& g, int v) {
  int c = 0;
  for (int t : g.out_legs) c += (t == v);
  for (const Edge& e : g.edges) c += (e.src == v);
  return c;
}

GradingVector gradings(const FlowGraph& g) {
  GradingVector gr;
  int through = 0;
  for (int t : g.in_legs) through += (t < 0);

  int vertex_components = 0;
  if (g.vertex_count > 0) {
    DSU dsu(g.vertex_count);
    for (const Edge& e : g.edges) dsu.unite(e.src, e.dst);
    std::vector<char> seen(g.vertex_count, 0);
    for (int v = 0; v < g.vertex_count; ++v) seen[dsu.find(v)] = 1;
    vertex_components = static_cast<int>(std::count(seen.begin(), seen.end(), 1));
  }
  int components = vertex_components + through;
  gr.cmp = components - 1;
  gr.gen = g.interior_edge_count() - g.vertex_count + vertex_components;

  std::vector<int> order;
  topological_order(g, &order);
  std::vector<std::int64_t> paths_to_out(g.vertex_count, 0);
  for (int t : g.out_legs)
    if (t >= 0) paths_to_out[t]++;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (const Edge& e : g.edges)
      if (e.src == *it) paths_to_out[*it] += paths_to_out[e.dst];
  }
  std::int64_t pth = through;
  for (int t : g.in_legs)
    if (t >= 0) pth += paths_to_out[t];
  gr.pth = pth;
  gr.grad = gr.cmp - gr.gen;
  return gr;
}

bool is_connected(const FlowGraph& g) { return gradings(g).cmp == 0; }

bool is_reduced(const FlowGraph& g) {
  for (const Edge& e : g.edges)
    if (out_valence(g, e.src) == 1 || in_valence(g, e.dst) == 1) return false;
  return true;
}

bool has_bad_edge(const FlowGraph& g) {
  for (const Edge& e : g.edges)
    if (out_valence(g, e.src) >= 2 && in_valence(g, e.dst) >= 2) return true;
  return false;
}

ContractionResult contract_edge(const FlowGraph& g, int edge_index) {
  if (edge_index < 0 || edge_index >= g.interior_edge_count())
    throw invalid_input("contract_edge: not an interior edge");
  const Edge e = g.edges[edge_index];
  for (int f = 0; f < g.interior_edge_count(); ++f) {
    if (f == edge_index) continue;
    if (g.edges[f].src == e.src && g.edges[f].dst == e.dst)
      return {std::nullopt, ContractionFailure::loop};
  }

  // Merge e.dst into e.src, then renumber so vertex ids stay contiguous.
  auto vmap = [&](int v) {
    if (v == e.dst) v = e.src;
    return v > e.dst ? v - 1 : v;
  };
  FlowGraph h;
  h.vertex_count = g.vertex_count - 1;
  std::vector<int> edge_map(g.interior_edge_count(), -1);
  for (int f = 0; f < g.interior_edge_count(); ++f) {
    if (f == edge_index) continue;
    edge_map[f] = static_cast<int>(h.edges.size());
    h.edges.push_back({vmap(g.edges[f].src), vmap(g.edges[f].dst)});
  }
  h.in_legs = g.in_legs;
  for (int& t : h.in_legs)
    if (t >= 0) t = vmap(t);
  h.out_legs = g.out_legs;
  for (int& t : h.out_legs)
    if (t >= 0) t = vmap(t);

  if (g.has_ribbon) {
    // Insert the flag word of the source vertex, cut at e, at the position of
    // e in the flag word of the target vertex.  The merged cyclic word must
    // again admit a rotation with all inputs before all outputs.
    std::vector<int> src_word(g.ribbon_in[e.src]);
    src_word.insert(src_word.end(), g.ribbon_out[e.src].begin(), g.ribbon_out[e.src].end());
    auto it = std::find(src_word.begin(), src_word.end(), edge_index);
    std::vector<int> src_cut;
    size_t pos = static_cast<size_t>(it - src_word.begin());
    for (size_t k = 1; k < src_word.size(); ++k)
      src_cut.push_back(src_word[(pos + k) % src_word.size()]);

    std::vector<int> merged;
    std::vector<int> dst_word(g.ribbon_in[e.dst]);
    dst_word.insert(dst_word.end(), g.ribbon_out[e.dst].begin(), g.ribbon_out[e.dst].end());
    for (int f : dst_word) {
      if (f == edge_index)
        merged.insert(merged.end(), src_cut.begin(), src_cut.end());
      else
        merged.push_back(f);
    }

    auto flag_is_in = [&](int f) {
      if (is_leg_flag(f)) return is_in_leg_flag(f);
      return g.edges[f].dst == e.src || g.edges[f].dst == e.dst;
    };
    const size_t len = merged.size();
    size_t in_count = 0;
    for (int f : merged) in_count += flag_is_in(f) ? 1 : 0;
    std::vector<int> in_order, out_order;
    bool found = false;
    for (size_t r = 0; r < len && !found; ++r) {
      bool ok = true;
      for (size_t k = 0; k < len; ++k) {
        if (flag_is_in(merged[(r + k) % len]) != (k < in_count)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found = true;
        for (size_t k = 0; k < len; ++k)
          (k < in_count ? in_order : out_order).push_back(merged[(r + k) % len]);
      }
    }
    if (!found) return {std::nullopt, ContractionFailure::ribbon_order};

    h.has_ribbon = true;
    h.ribbon_in.assign(h.vertex_count, {});
    h.ribbon_out.assign(h.vertex_count, {});
    auto remap_flags = [&](const std::vector<int>& flags) {
      std::vector<int> out;
      out.reserve(flags.size());
      for (int f : flags) out.push_back(is_leg_flag(f) ? f : edge_map[f]);
      return out;
    };
    for (int v = 0; v < g.vertex_count; ++v) {
      if (v == e.src || v == e.dst) continue;
      h.ribbon_in[vmap(v)] = remap_flags(g.ribbon_in[v]);
      h.ribbon_out[vmap(v)] = remap_flags(g.ribbon_out[v]);
    }
    h.ribbon_in[vmap(e.src)] = remap_flags(in_order);
    h.ribbon_out[vmap(e.src)] = remap_flags(out_order);
  }

  return {Contraction{std::move(h), std::move(edge_map), vmap(e.src)}, ContractionFailure::none};
}

std::vector<Expansion> raw_expansions(const FlowGraph& g) {
  std::vector<Expansion> result;
  for (int v = 0; v < g.vertex_count; ++v) {
    if (!g.has_ribbon) {
      std::vector<int> ins = in_flags(g, v);
      std::vector<int> outs = out_flags(g, v);
      const int a = static_cast<int>(ins.size());
      const int b = static_cast<int>(outs.size());
      for (unsigned mask_i = 0; mask_i < (1u << a); ++mask_i) {
        for (unsigned mask_o = 0; mask_o < (1u << b); ++mask_o) {
          std::vector<int> i1, i2, o1, o2;
          for (int k = 0; k < a; ++k) (mask_i >> k & 1 ? i1 : i2).push_back(ins[k]);
          for (int k = 0; k < b; ++k) (mask_o >> k & 1 ? o1 : o2).push_back(outs[k]);
          if (i1.empty() || o2.empty()) continue;
          if (i1.size() + o1.size() < 2) continue;
          if (i2.size() + o2.size() < 2) continue;

          FlowGraph h = g;
          const int w = h.vertex_count++;
          for (int f : i2) {
            if (is_leg_flag(f))
              h.in_legs[flag_leg_index(f)] = w;
            else
              h.edges[f].dst = w;
          }
          for (int f : o2) {
            if (is_leg_flag(f))
              h.out_legs[flag_leg_index(f)] = w;
            else
              h.edges[f].src = w;
          }
          int new_edge = static_cast<int>(h.edges.size());
          h.edges.push_back({v, w});
          result.push_back({std::move(h), new_edge, v});
        }
      }
    } else {
      // Cut the cyclic word into two arcs; the lower arc must read
      // out* in+ out* and the upper arc in* out+ in*.
      std::vector<int> word(g.ribbon_in[v]);
      word.insert(word.end(), g.ribbon_out[v].begin(), g.ribbon_out[v].end());
      const int len = static_cast<int>(word.size());
      auto flag_is_in = [&](int f) {
        if (is_leg_flag(f)) return is_in_leg_flag(f);
        return g.edges[f].dst == v;
      };
      for (int start = 0; start < len; ++start) {
        for (int arc_len = 2; arc_len <= len - 2; ++arc_len) {
          std::vector<int> lower, upper;
          for (int k = 0; k < arc_len; ++k) lower.push_back(word[(start + k) % len]);
          for (int k = arc_len; k < len; ++k) upper.push_back(word[(start + k) % len]);
          int p = 0;
          std::vector<int> o_head, i_mid, o_tail;
          while (p < arc_len && !flag_is_in(lower[p])) o_head.push_back(lower[p++]);
          while (p < arc_len && flag_is_in(lower[p])) i_mid.push_back(lower[p++]);
          while (p < arc_len && !flag_is_in(lower[p])) o_tail.push_back(lower[p++]);
          if (p != arc_len || i_mid.empty()) continue;
          int q = 0;
          const int ulen = static_cast<int>(upper.size());
          std::vector<int> i_head, o_mid, i_tail;
          while (q < ulen && flag_is_in(upper[q])) i_head.push_back(upper[q++]);
          while (q < ulen && !flag_is_in(upper[q])) o_mid.push_back(upper[q++]);
          while (q < ulen && flag_is_in(upper[q])) i_tail.push_back(upper[q++]);
          if (q != ulen || o_mid.empty()) continue;

          FlowGraph h = g;
          const int w = h.vertex_count++;
          auto move_to = [&](const std::vector<int>& flags, int target) {
            for (int f : flags) {
              if (is_in_leg_flag(f))
                h.in_legs[flag_leg_index(f)] = target;
              else if (is_out_leg_flag(f))
                h.out_legs[flag_leg_index(f)] = target;
              else if (flag_is_in(f))
                h.edges[f].dst = target;
              else
                h.edges[f].src = target;
            }
          };
          move_to(i_mid, v);
          move_to(o_head, v);
          move_to(o_tail, v);
          move_to(i_head, w);
          move_to(i_tail, w);
          move_to(o_mid, w);
          int new_edge = static_cast<int>(h.edges.size());
          h.edges.push_back({v, w});
          h.ribbon_in.resize(h.vertex_count);
          h.ribbon_out.resize(h.vertex_count);
          h.ribbon_in[v] = i_mid;
          h.ribbon_out[v] = o_tail;
          h.ribbon_out[v].push_back(new_edge);
          h.ribbon_out[v].insert(h.ribbon_out[v].end(), o_head.begin(), o_head.end());
          h.ribbon_in[w] = i_tail;
          h.ribbon_in[w].push_back(new_edge);
          h.ribbon_in[w].insert(h.ribbon_in[w].end(), i_head.begin(), i_head.end());
          h.ribbon_out[w] = o_mid;
          result.push_back({std::move(h), new_edge, v});
        }
      }
    }
  }
  return result;
}

std::string serialize(const FlowGraph& g) {
  std::ostringstream os;
  os << g.outputs() << ' ' << g.inputs() << " |";
  for (int t : g.out_legs) {
    os << ' ';
    if (t >= 0)
      os << t;
    else
      os << 't' << (~t + 1);
  }
  os << " |";
  for (int t : g.in_legs) {
    os << ' ';
    if (t >= 0)
      os << t;
    else
      os << 't' << (~t + 1);
  }
  os << " | e:";
  std::vector<std::pair<int, int>> sorted_edges;
  for (const Edge& e : g.edges) sorted_edges.emplace_back(e.src, e.dst);
  std::sort(sorted_edges.begin(), sorted_edges.end());
  for (size_t k = 0; k < sorted_edges.size(); ++k) {
    if (k) os << ',';
    os << '(' << sorted_edges[k].first << '>' << sorted_edges[k].second << ')';
  }
  if (g.has_ribbon) {
    os << " | r:";
    auto flag_name = [](int f) {
      std::ostringstream fs;
      if (is_in_leg_flag(f))
        fs << 'i' << (flag_leg_index(f) + 1);
      else if (is_out_leg_flag(f))
        fs << 'o' << (flag_leg_index(f) + 1);
      else
        fs << 'e' << f;
      return fs.str();
    };
    for (int v = 0; v < g.vertex_count; ++v) {
      if (v) os << ',';
      os << '(' << v << ':';
      bool first = true;
      for (int f : g.ribbon_in[v]) {
        if (!first) os << ' ';
        first = false;
        os << flag_name(f);
      }
      for (int f : g.ribbon_out[v]) {
        if (!first) os << ' ';
        first = false;
        os << flag_name(f);
      }
      os << ')';
    }
  }
  return os.str();
}

FlowGraph corolla(int m, int n) {
  FlowGraph g;
  g.vertex_count = 1;
  g.in_legs.assign(n, 0);
  g.out_legs.assign(m, 0);
  return g;
}

FlowGraph through_strands(const std::vector<int>& out_of_in) {
  FlowGraph g;
  const int n = static_cast<int>(out_of_in.size());
  g.in_legs.assign(n, 0);
  g.out_legs.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    g.in_legs[j] = ~out_of_in[j];
    g.out_legs[out_of_in[j]] = ~j;
  }
  return g;
}

}  // namespace gcflow
