#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringel/ndcolour.hpp"
#include "ringel/tree.hpp"

namespace ringel {

struct Verdict {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

/// Injective image in Z_{2n+1} with pairwise distinct edge colours. The
/// diagnostic names the first clash in tree-vertex / edge order.
Verdict verify_rainbow(const Embedding& e, const Tree& t);

/// Two shifts of the same copy that share an edge.
struct ShiftCollision {
  Colour colour = 0;
  Edge first{};             // tree edges with the repeated colour
  Edge second{};
  std::int64_t shift = 0;   // shift s with T_0 and T_s sharing an edge
  Edge shared{};            // that edge of K_{2n+1}, endpoints ascending
};

/// Collision forced by a repeated colour, if any.
std::optional<ShiftCollision> find_shift_collision(const Embedding& e, const Tree& t);

/// T_0, ..., T_{2n}. Throws ValidationError unless e is a rainbow copy of an
/// n-edge tree; a repeated colour is reported with its collision witness.
std::vector<Embedding> decompose_by_shifts(const Embedding& e, const Tree& t);

/// Copies pairwise edge-disjoint, each a copy of t, and n(2n+1) edges in total.
Verdict verify_decomposition(const std::vector<Embedding>& copies, const Tree& t);

// ---- certificates ----------------------------------------------------------------

enum class Producer { Search, CaseC, Graceful };
std::string to_string(Producer p);
Producer producer_from_string(std::string_view s);

struct Reductions {
  std::optional<int> fixed_vertex;  // tree vertex whose image was fixed at 0
  bool reflection = false;
  bool operator==(const Reductions&) const = default;
};

struct Certificate {
  static constexpr int kVersion = 1;
  std::int64_t n = 0;
  Tree tree;
  Embedding base;
  Reductions reductions;
  Producer producer = Producer::Search;
  bool verified = false;   // stored status; advisory
  std::string hash;        // SHA-256 hex over the canonical form without the hash
};

/// Builds a certificate and fills status and hash.
Certificate make_certificate(const Tree& t, const Embedding& base, Producer producer, Reductions red);

/// Recomputes rainbow and decomposition checks from scratch.
Verdict verify_certificate(const Certificate& c);

/// Canonical JSON: sorted keys, no whitespace, integers only.
std::string canonical_json(const Certificate& c, bool with_hash = true);
std::string certificate_hash(const Certificate& c);
std::string sha256_hex(std::string_view bytes);

std::string write_certificate(const Certificate& c);
/// Throws ParseError on schema violations or a hash mismatch.
Certificate read_certificate(std::string_view text);

}  // namespace ringel
