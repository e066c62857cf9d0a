#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ringel/ndcolour.hpp"
#include "ringel/tree.hpp"

namespace ringel {

enum class Strategy { Exhaustive, RandomRestart };

struct SearchConfig {
  Strategy strategy = Strategy::Exhaustive;
  std::uint64_t seed = 0;        // ignored by the exhaustive strategy
  int restarts = 256;
  std::uint64_t restart_nodes = 20000;  // node budget of a single restart
  int threads = 0;               // 0 = hardware concurrency
  bool reflection = true;        // quotient by i -> -i
  double time_budget = 0;        // seconds; 0 = unlimited
};

enum class SearchStatus { Found, Exhausted, Timeout };
std::string to_string(SearchStatus s);

/// BFS from the centroid; among siblings, higher degree first, then smaller index.
std::vector<int> search_order(const Tree& t);

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  Embedding embedding;
  int anchor = -1;               // tree vertex fixed at 0
  bool reflection = false;       // reflection quotient was applied
  int restart = -1;              // winning restart, randomized strategy only
  std::uint64_t nodes = 0;
};

/// Rainbow copy of t in the ND-colouring of K_{2n+1}; requires e(t) <= n.
SearchResult find_rainbow_embedding(const Tree& t, std::int64_t n, const SearchConfig& cfg = {});

/// Every rainbow embedding with `anchor` mapped to 0, in search order.
/// anchor = -1 uses the first vertex of search_order(t).
std::vector<Embedding> enumerate_rainbow_embeddings(const Tree& t, std::int64_t n, int anchor = -1,
                                                    bool reflection = false);

/// Bijection V(T) -> {0, ..., n} with distinct edge differences.
struct GracefulLabelling {
  std::vector<std::int64_t> label;
  bool operator==(const GracefulLabelling&) const = default;
};

bool is_graceful(const Tree& t, const GracefulLabelling& g);

struct GracefulResult {
  SearchStatus status = SearchStatus::Exhausted;
  GracefulLabelling labelling;
  std::uint64_t nodes = 0;
};

GracefulResult find_graceful_labelling(const Tree& t, const SearchConfig& cfg = {});

/// Image = labels, read in Z_{2n+1}. Throws ValidationError for a labelling
/// that is not graceful.
Embedding graceful_to_embedding(const Tree& t, const GracefulLabelling& g, std::int64_t n);

}  // namespace ringel
