#include <random>
#include <set>

#include "doctest.h"
#include "ringel/error.hpp"
#include "ringel/ndcolour.hpp"
#include "ringel/rng.hpp"

using namespace ringel;

namespace {

// Scans k in [1, n] for i = j + k or j = i + k (mod 2n+1).
Colour oracle_colour(std::int64_t n, Vertex i, Vertex j) {
  const std::int64_t M = 2 * n + 1;
  for (std::int64_t k = 1; k <= n; ++k) {
    if ((j + k) % M == i || (i + k) % M == j) return k;
  }
  return -1;
}

}  // namespace

TEST_CASE("colour_of examples") {
  CHECK(colour_of(4, 0, 5) == 4);
  CHECK(colour_of(4, 2, 7) == 4);
  CHECK(oracle_colour(4, 2, 7) == 4);
  for (std::int64_t n : {1, 2, 7, 100}) {
    const std::int64_t M = 2 * n + 1;
    for (Vertex v = 0; v < M; ++v) CHECK(colour_of(n, v, (v + 1) % M) == 1);
  }
}

TEST_CASE("colour_of rejects loops and out-of-range vertices") {
  CHECK_THROWS_AS(colour_of(4, 3, 3), InvalidEdge);
  CHECK_THROWS_AS(colour_of(4, 0, 9), InvalidEdge);
  CHECK_THROWS_AS(colour_of(4, -1, 2), InvalidEdge);
}

TEST_CASE("colour_of agrees with the oracle for every edge, n <= 30") {
  for (std::int64_t n = 1; n <= 30; ++n) {
    const std::int64_t M = 2 * n + 1;
    for (Vertex i = 0; i < M; ++i) {
      for (Vertex j = 0; j < M; ++j) {
        if (i != j) REQUIRE(colour_of(n, i, j) == oracle_colour(n, i, j));
      }
    }
  }
}

TEST_CASE("shift invariance: exhaustive for n <= 50, sampled above") {
  for (std::int64_t n = 1; n <= 50; ++n) {
    const std::int64_t M = 2 * n + 1;
    for (Vertex i = 0; i < M; ++i) {
      for (Vertex j = i + 1; j < M; ++j) {
        const Colour c = colour_of(n, i, j);
        for (std::int64_t s = 0; s < M; ++s) REQUIRE(colour_of(n, (i + s) % M, (j + s) % M) == c);
      }
    }
  }
  auto rng = stream_for(11, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 1000000);
    const std::int64_t M = 2 * n + 1;
    const Vertex i = static_cast<Vertex>(rng() % M);
    Vertex j = static_cast<Vertex>(rng() % M);
    if (i == j) j = (j + 1) % M;
    const std::int64_t s = static_cast<std::int64_t>(rng() % M);
    REQUIRE(colour_of(n, (i + s) % M, (j + s) % M) == colour_of(n, i, j));
  }
}

TEST_CASE("shift_embedding") {
  Embedding e{4, {0, 3, 4, 5, 6}};
  auto s = shift_embedding(e, 1);
  CHECK(s.image == std::vector<Vertex>{1, 4, 5, 6, 7});
  CHECK(shift_embedding(e, 0) == e);
  const std::vector<Edge> fig{{0, 3}, {1, 3}, {2, 3}, {0, 4}};
  CHECK(edge_colours(e, fig) == std::vector<Colour>{4, 2, 1, 3});
  CHECK(edge_colours(s, fig) == edge_colours(e, fig));

  Embedding k3{1, {0, 1}};
  auto k3s = shift_embedding(k3, 2);
  CHECK(k3s.image == std::vector<Vertex>{2, 0});
  const std::vector<Edge> one{{0, 1}};
  CHECK(edge_colours(k3s, one) == std::vector<Colour>{1});
}

TEST_CASE("2-factorization") {
  CHECK(verify_two_factorization(1));
  CHECK(verify_two_factorization(4));
  CHECK(verify_two_factorization(500));
  CHECK(verify_two_factorization(NDColouring(9)));
}

TEST_CASE("neighbours are the two colour-c partners") {
  NDColouring nd(6);
  for (Vertex v = 0; v < 13; ++v) {
    for (Colour c = 1; c <= 6; ++c) {
      auto [a, b] = nd.neighbours(v, c);
      CHECK(a != b);
      CHECK(nd.colour(v, a) == c);
      CHECK(nd.colour(v, b) == c);
    }
  }
}

TEST_CASE("relabelled ND-colouring is a 2-factorization") {
  auto t = random_relabelled_nd(8, 3);
  CHECK(t.order() == 17);
  CHECK(t.num_colours() == 8);
  CHECK(verify_two_factorization(t));
}
