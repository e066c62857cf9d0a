#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ringel/types.hpp"

namespace ringel {

/// Canonical residue of `v` modulo `m` (m > 0), always in [0, m).
inline std::int64_t mod(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

/// Edge-colouring access used by the gadgets that only need a
/// 2-factorization: every vertex meets exactly two edges of each colour.
class Colouring {
 public:
  virtual ~Colouring() = default;
  /// Number of vertices (2n+1).
  virtual std::int64_t order() const = 0;
  /// Number of colours (n).
  virtual std::int64_t num_colours() const = 0;
  virtual Colour colour(Vertex u, Vertex v) const = 0;
  /// The two colour-`c` neighbours of `v`.
  virtual std::array<Vertex, 2> neighbours(Vertex v, Colour c) const = 0;
};

/// The near-distance colouring of K_{2n+1} on Z_{2n+1}: edge {i, j} gets the
/// unique k in [1, n] with i = j + k or j = i + k. Colour classes are never
/// materialized.
class NDColouring final : public Colouring {
 public:
  explicit NDColouring(std::int64_t n);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t order() const override { return 2 * n_ + 1; }
  std::int64_t num_colours() const override { return n_; }

  /// Throws InvalidEdge for loops or out-of-range endpoints.
  Colour colour(Vertex u, Vertex v) const override;
  std::array<Vertex, 2> neighbours(Vertex v, Colour c) const override;

  Vertex add(Vertex v, std::int64_t s) const { return mod(v + s, order()); }
  bool contains(Vertex v) const { return v >= 0 && v < order(); }

 private:
  std::int64_t n_;
};

/// Colour of {i, j} in the ND-colouring of K_{2n+1}.
Colour colour_of(std::int64_t n, Vertex i, Vertex j);

/// Colour of a signed step `a` (the edge {x, x + a}), in [1, n].
Colour step_colour(std::int64_t n, std::int64_t a);

/// Injective map from tree vertices into Z_{2n+1}.
struct Embedding {
  std::int64_t n = 0;
  std::vector<Vertex> image;

  bool operator==(const Embedding&) const = default;
};

/// Adds `s` to every image vertex; colours are unchanged.
Embedding shift_embedding(const Embedding& e, std::int64_t s);

/// Colours of the images of `edges` under `e`, in edge order.
std::vector<Colour> edge_colours(const Embedding& e, std::span<const Edge> edges);

/// Exhaustive check that each vertex meets exactly two edges of each colour
/// and each colour class has exactly 2n+1 edges.
bool verify_two_factorization(std::int64_t n);

/// Same check against an arbitrary colouring.
bool verify_two_factorization(const Colouring& c);

/// Explicit colour table, used for non-ND 2-factorizations in tests and
/// for gadgets that take an abstract colouring.
class TableColouring final : public Colouring {
 public:
  TableColouring(std::int64_t order, std::int64_t colours,
                 std::vector<Colour> table);

  std::int64_t order() const override { return order_; }
  std::int64_t num_colours() const override { return colours_; }
  Colour colour(Vertex u, Vertex v) const override;
  std::array<Vertex, 2> neighbours(Vertex v, Colour c) const override;

 private:
  std::int64_t order_;
  std::int64_t colours_;
  std::vector<Colour> table_;
  std::vector<std::array<Vertex, 2>> nbr_;  // (v * colours + c - 1) -> pair
};

/// The ND-colouring of K_{2n+1} under a random vertex relabelling and a
/// random colour relabelling. A 2-factorization, generally not cyclic.
TableColouring random_relabelled_nd(std::int64_t n, std::uint64_t seed);

}  // namespace ringel
