#include "ringel/ndcolour.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ringel/error.hpp"
#include "ringel/rng.hpp"

namespace ringel {

NDColouring::NDColouring(std::int64_t n) : n_(n) {
  if (n < 1) throw ParameterError("ND-colouring needs n >= 1, got " + std::to_string(n));
}

Colour NDColouring::colour(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v) || u == v) {
    throw InvalidEdge("no edge {" + std::to_string(u) + ", " + std::to_string(v) +
                      "} in K_" + std::to_string(order()));
  }
  std::int64_t d = u > v ? u - v : v - u;
  return std::min(d, order() - d);
}

std::array<Vertex, 2> NDColouring::neighbours(Vertex v, Colour c) const {
  if (c < 1 || c > n_) throw ParameterError("colour " + std::to_string(c) + " out of range");
  return {add(v, c), add(v, -c)};
}

Colour colour_of(std::int64_t n, Vertex i, Vertex j) { return NDColouring(n).colour(i, j); }

Colour step_colour(std::int64_t n, std::int64_t a) {
  std::int64_t m = 2 * n + 1;
  std::int64_t r = mod(a, m);
  if (r == 0) throw InvalidEdge("zero step does not define an edge");
  return std::min(r, m - r);
}

Embedding shift_embedding(const Embedding& e, std::int64_t s) {
  Embedding out{e.n, e.image};
  const std::int64_t m = 2 * e.n + 1;
  for (auto& v : out.image) v = mod(v + s, m);
  return out;
}

std::vector<Colour> edge_colours(const Embedding& e, std::span<const Edge> edges) {
  NDColouring nd(e.n);
  std::vector<Colour> out;
  out.reserve(edges.size());
  for (const auto& ed : edges) out.push_back(nd.colour(e.image.at(ed.u), e.image.at(ed.v)));
  return out;
}

bool verify_two_factorization(std::int64_t n) {
  if (n < 1) return false;
  NDColouring nd(n);
  const std::int64_t m = nd.order();
  std::vector<std::int64_t> per_vertex(static_cast<std::size_t>(n) + 1);
  std::vector<std::int64_t> per_colour(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < m; ++v) {
    std::fill(per_vertex.begin(), per_vertex.end(), 0);
    for (Vertex w = 0; w < m; ++w) {
      if (w == v) continue;
      Colour c = nd.colour(v, w);
      ++per_vertex[static_cast<std::size_t>(c)];
      if (v < w) ++per_colour[static_cast<std::size_t>(c)];
    }
    for (Colour c = 1; c <= n; ++c) {
      if (per_vertex[static_cast<std::size_t>(c)] != 2) return false;
    }
  }
  for (Colour c = 1; c <= n; ++c) {
    if (per_colour[static_cast<std::size_t>(c)] != m) return false;
  }
  return true;
}

bool verify_two_factorization(const Colouring& col) {
  const std::int64_t m = col.order();
  const std::int64_t k = col.num_colours();
  if (m != 2 * k + 1) return false;
  std::vector<std::int64_t> per_vertex(static_cast<std::size_t>(k) + 1);
  for (Vertex v = 0; v < m; ++v) {
    std::fill(per_vertex.begin(), per_vertex.end(), 0);
    for (Vertex w = 0; w < m; ++w) {
      if (w == v) continue;
      Colour c = col.colour(v, w);
      if (c < 1 || c > k || col.colour(w, v) != c) return false;
      ++per_vertex[static_cast<std::size_t>(c)];
    }
    for (Colour c = 1; c <= k; ++c) {
      if (per_vertex[static_cast<std::size_t>(c)] != 2) return false;
    }
  }
  return true;
}

TableColouring::TableColouring(std::int64_t order, std::int64_t colours,
                               std::vector<Colour> table)
    : order_(order), colours_(colours), table_(std::move(table)) {
  if (order_ < 1 || colours_ < 1 ||
      table_.size() != static_cast<std::size_t>(order_ * order_)) {
    throw ParameterError("colour table has the wrong shape");
  }
  nbr_.assign(static_cast<std::size_t>(order_ * colours_), {-1, -1});
  for (Vertex v = 0; v < order_; ++v) {
    for (Vertex w = 0; w < order_; ++w) {
      if (v == w) continue;
      Colour c = colour(v, w);
      if (c < 1 || c > colours_) throw ParameterError("colour out of range in table");
      auto& slot = nbr_[static_cast<std::size_t>(v * colours_ + c - 1)];
      if (slot[0] < 0) {
        slot[0] = w;
      } else if (slot[1] < 0) {
        slot[1] = w;
      } else {
        throw ParameterError("table is not a 2-factorization");
      }
    }
  }
}

Colour TableColouring::colour(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= order_ || v >= order_ || u == v) {
    throw InvalidEdge("no edge {" + std::to_string(u) + ", " + std::to_string(v) + "}");
  }
  return table_[static_cast<std::size_t>(u * order_ + v)];
}

std::array<Vertex, 2> TableColouring::neighbours(Vertex v, Colour c) const {
  if (c < 1 || c > colours_) throw ParameterError("colour " + std::to_string(c) + " out of range");
  return nbr_.at(static_cast<std::size_t>(v * colours_ + c - 1));
}

TableColouring random_relabelled_nd(std::int64_t n, std::uint64_t seed) {
  NDColouring nd(n);
  const std::int64_t m = nd.order();
  auto rng = stream_for(seed, 0);
  std::vector<Vertex> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Colour> cperm(static_cast<std::size_t>(n));
  std::iota(cperm.begin(), cperm.end(), 1);
  std::shuffle(cperm.begin(), cperm.end(), rng);
  std::vector<Colour> table(static_cast<std::size_t>(m * m), 0);
  for (Vertex u = 0; u < m; ++u) {
    for (Vertex v = 0; v < m; ++v) {
      if (u == v) continue;
      Colour c = nd.colour(u, v);
      table[static_cast<std::size_t>(perm[u] * m + perm[v])] = cperm[static_cast<std::size_t>(c - 1)];
    }
  }
  return TableColouring(m, n, std::move(table));
}

}  // namespace ringel
