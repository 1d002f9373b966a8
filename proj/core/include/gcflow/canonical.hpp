#ifndef GCFLOW_CANONICAL_HPP
#define GCFLOW_CANONICAL_HPP

#include <cstdint>
#include <vector>

#include "gcflow/flow_graph.hpp"

namespace gcflow {

// A graph automorphism: vertex and interior-edge permutations preserving
// incidence and direction and fixing every leg (and the ribbon orders, when
// present).
struct Automorphism {
  std::vector<int> vperm;
  std::vector<int> eperm;
};

struct CanonicalGraph {
  FlowGraph graph;                  // canonical labeling
  std::vector<Automorphism> auts;   // the full automorphism group
  std::string serial;
  std::uint64_t hash = 0;
};

// Mapping from the input graph onto the canonical representative.
struct CanonicalResult {
  CanonicalGraph canonical;
  std::vector<int> vmap;  // input vertex -> canonical vertex
  std::vector<int> emap;  // input edge index -> canonical edge index
};

// Canonical labeling by color refinement on (valences, leg labels) followed by
// exhaustive ordering of the surviving color classes; legs act as fixed colors,
// so the classes are almost always singletons.  Two graphs are isomorphic
// (fixing each leg) iff their serials are byte-identical.
CanonicalResult canonicalize(const FlowGraph& g);

std::string canonical_serial(const FlowGraph& g);

std::uint64_t fnv1a64(const std::string& s);

int permutation_sign(const std::vector<int>& p);

}  // namespace gcflow

#endif
