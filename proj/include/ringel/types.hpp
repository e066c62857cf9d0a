#pragma once

#include <compare>
#include <cstdint>

namespace ringel {

// Vertex of K_{2n+1}, always a canonical residue in [0, 2n].
using Vertex = std::int64_t;
// Colour of the ND-colouring, in [1, n].
using Colour = std::int64_t;

// Tree edge between tree-vertex indices.
struct Edge {
  int u = 0;
  int v = 0;
  auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace ringel
