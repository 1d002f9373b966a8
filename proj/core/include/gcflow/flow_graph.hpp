#ifndef GCFLOW_FLOW_GRAPH_HPP
#define GCFLOW_FLOW_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcflow {

// Errors that map to CLI exit codes.
struct invalid_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Edge {
  int src = 0;
  int dst = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// A flag is an edge end or a leg seen from a vertex.
// Encoding: interior edge e -> e (non-negative),
//           input leg j (0-based) -> ~(2j), output leg i -> ~(2i+1).
inline int in_leg_flag(int j) { return ~(2 * j); }
inline int out_leg_flag(int i) { return ~(2 * i + 1); }
inline bool is_leg_flag(int f) { return f < 0; }
inline bool is_in_leg_flag(int f) { return f < 0 && (~f) % 2 == 0; }
inline bool is_out_leg_flag(int f) { return f < 0 && (~f) % 2 == 1; }
inline int flag_leg_index(int f) { return (~f) / 2; }

// A directed (m,n)-graph with a flow: finite DAG, m labeled output legs,
// n labeled input legs, every vertex at least trivalent with at least one
// input and one output.  Vertex-free graphs are disjoint unions of through
// strands; a through strand is recorded by pairing the two legs:
// in_legs[j] == ~i and out_legs[i] == ~j.
//
// An optional ribbon structure gives, at each vertex, a linear order of the
// incoming flags and a linear order of the outgoing flags (equivalently a
// cyclic order of all flags with inputs preceding outputs).
struct FlowGraph {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<int> in_legs;   // 0-based input label -> vertex, or ~out_leg
  std::vector<int> out_legs;  // 0-based output label -> vertex, or ~in_leg
  bool has_ribbon = false;
  std::vector<std::vector<int>> ribbon_in;   // per vertex, ordered in-flags
  std::vector<std::vector<int>> ribbon_out;  // per vertex, ordered out-flags

  int inputs() const { return static_cast<int>(in_legs.size()); }
  int outputs() const { return static_cast<int>(out_legs.size()); }
  int interior_edge_count() const { return static_cast<int>(edges.size()); }

  friend bool operator==(const FlowGraph&, const FlowGraph&) = default;
};

enum class Violation {
  bad_leg_target,
  through_pair_mismatch,
  self_loop,
  directed_cycle,
  valence_too_small,
  missing_input,
  missing_output,
  no_legs,
  ribbon_orders_mismatch,
};

struct ValidationReport {
  std::vector<std::pair<Violation, std::string>> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const FlowGraph& g);
bool is_valid(const FlowGraph& g);

struct GradingVector {
  int cmp = 0;           // connected components minus one
  int gen = 0;           // first Betti number of the geometric realization
  std::int64_t pth = 0;  // directed input-to-output paths
  int grad = 0;          // cmp - gen
  friend bool operator==(const GradingVector&, const GradingVector&) = default;
};

GradingVector gradings(const FlowGraph& g);

bool is_connected(const FlowGraph& g);

// True iff no interior edge is the unique output of its source or the unique
// input of its target.
bool is_reduced(const FlowGraph& g);

// True iff some interior edge has >=2 total outputs at its source and >=2
// total inputs at its target (the configuration excluded from half-PROP
// composites).  For connected genus-0 graphs this is equivalent to pth < m*n.
bool has_bad_edge(const FlowGraph& g);

// Flags at a vertex, in the fixed reference order: legs sorted by label,
// then interior edge ends sorted by edge index.
std::vector<int> in_flags(const FlowGraph& g, int v);
std::vector<int> out_flags(const FlowGraph& g, int v);

int in_valence(const FlowGraph& g, int v);
int out_valence(const FlowGraph& g, int v);

// Result of contracting an interior edge.  `edge_map[old]` gives the index of
// each surviving edge in the contracted graph (identity order with the
// contracted edge removed).  Contractions that would create a loop (a parallel
// partner edge exists) or, in the ribbon case, a merged flag order that cannot
// be written with inputs before outputs, are rejected.
struct Contraction {
  FlowGraph graph;
  std::vector<int> edge_map;
  int merged_vertex = 0;
};

enum class ContractionFailure { none, loop, ribbon_order };

struct ContractionResult {
  std::optional<Contraction> result;
  ContractionFailure failure = ContractionFailure::none;
};

ContractionResult contract_edge(const FlowGraph& g, int edge_index);

// One-edge expansions of a vertex: every splitting of the flags of a vertex
// into two vertices joined by a new edge such that the result is again valid.
// The new edge is appended at the end of the edge list; `split_vertex` is the
// expanded vertex of the input graph.
struct Expansion {
  FlowGraph graph;
  int new_edge = 0;
  int split_vertex = 0;
};

std::vector<Expansion> raw_expansions(const FlowGraph& g);

// Canonical text form; assumes labels are already canonical (see canonical.hpp).
std::string serialize(const FlowGraph& g);

FlowGraph corolla(int m, int n);
FlowGraph through_strands(const std::vector<int>& out_of_in);  // in j -> out perm[j]

}  // namespace gcflow

#endif
