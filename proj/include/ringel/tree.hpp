#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringel/types.hpp"

namespace ringel {

/// Simple tree on {0, ..., m-1}. Immutable after construction; edges are
/// kept normalized (u < v) and sorted.
class Tree {
 public:
  Tree() = default;

  /// Validates connectivity, acyclicity and edge count; throws ValidationError.
  static Tree from_edge_list(int m, std::span<const Edge> edges);
  static Tree from_pairs(int m, std::span<const std::pair<int, int>> pairs);
  /// Standard Pruefer bijection; the tree has seq.size() + 2 vertices.
  static Tree from_prufer(std::span<const int> seq);

  int size() const noexcept { return m_; }
  int num_edges() const noexcept { return m_ - 1; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const int> neighbours(int v) const {
    return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
  }
  int degree(int v) const { return off_[v + 1] - off_[v]; }
  bool is_leaf(int v) const { return degree(v) == 1; }
  bool adjacent(int u, int v) const;

  std::vector<int> to_prufer() const;
  std::vector<int> degree_sequence() const;  // sorted descending
  std::vector<int> leaves() const;

  bool operator==(const Tree& o) const { return m_ == o.m_ && edges_ == o.edges_; }

 private:
  int m_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> off_;
  std::vector<int> adj_;
};

/// "m" on the first line, then m-1 lines "u v".
Tree parse_tree_text(std::string_view text);
/// A single line of m-2 space-separated integers.
Tree parse_prufer_text(std::string_view text);
std::string to_tree_text(const Tree& t);

/// Uniform random labelled tree via a random Pruefer sequence.
Tree random_tree(int m, std::mt19937_64& rng);

/// Isomorphism-invariant encoding (AHU string rooted at the centre).
std::string canonical_form(const Tree& t);
/// One representative per isomorphism class on m vertices, sorted by
/// canonical form.
std::vector<Tree> enumerate_trees(int m);

/// Vertex minimizing the largest component left after its removal;
/// ties go to the smallest index.
int centroid(const Tree& t);

// ---- structure ------------------------------------------------------------

struct LeavesOrPaths {
  bool has_leaves = false;  // which branch certified the bound
  std::int64_t threshold = 0;  // ceil(n / 4k)
  std::vector<int> leaves;
  std::vector<std::vector<int>> paths;  // vertex sequences, length k each
};

/// Either at least n/4k leaves or at least n/4k vertex-disjoint bare paths
/// of length k. Requires k >= 3 and n >= 4k.
LeavesOrPaths leaves_or_bare_paths(const Tree& t, int k);

/// Greedy packing of vertex-disjoint bare paths of length exactly k,
/// scanning maximal chains of degree-2 vertices in index order.
std::vector<std::vector<int>> pack_bare_paths(const Tree& t, int k);

struct Subtree {
  std::vector<int> vertices;  // sorted, original labels
  std::vector<Edge> edges;    // sorted, original labels
};

/// Splits the subtree induced by `vertices` into a piece with m..2m-1
/// vertices and the rest, which keeps `root`.
std::pair<Subtree, Subtree> split_off_piece(const Tree& t,
                                            std::span<const int> vertices,
                                            int root, int m);

/// Subtrees whose edge sets partition E(t), each with m..4m vertices.
std::vector<Subtree> divide_tree(const Tree& t, int m);

// ---- case division ----------------------------------------------------------

/// Exact positive rational, used for the case-division parameter.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 100;

  /// Accepts "0.01" or "1/100".
  static Rational parse(std::string_view s);
  std::string str() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

enum class TreeCase { A, B, C };
std::string to_string(TreeCase c);

struct CaseThresholds {
  std::int64_t n = 0;
  std::int64_t cluster_leaves = 0;  // ceil(delta^-4)
  std::int64_t pruned_max = 0;      // floor(n / 100)
  std::int64_t path_length = 0;     // ceil(delta^-1)
  std::int64_t path_count = 0;      // ceil(delta n / 800)
  std::int64_t leaf_count = 0;      // ceil(delta^6 n), at least 1
};

CaseThresholds case_thresholds(std::int64_t n, const Rational& delta);

struct CaseWitness {
  TreeCase which = TreeCase::A;
  Rational delta;
  CaseThresholds thresholds;
  std::vector<int> leaves;               // A
  std::vector<std::vector<int>> paths;   // B
  std::vector<int> pruned_vertices;      // C: vertices kept after pruning
  std::vector<int> centres;              // C
  std::vector<int> centre_leaf_counts;   // C
};

/// Follows the case-division argument: prune clusters of >= delta^-4 leaves
/// and test the pruned size (C), then look for long bare paths (B), then for
/// leaves with distinct neighbours (A). Preference C > B > A.
CaseWitness classify_case(const Tree& t, const Rational& delta);

struct Check {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
  static Check fail(std::string why) { return {false, std::move(why)}; }
};

/// Re-validates a witness against the tree from scratch.
Check check_witness(const Tree& t, const CaseWitness& w);

/// Vertices kept when the leaves of every vertex adjacent to at least
/// `cluster` leaves are removed; also reports the centres and their counts.
struct Pruned {
  std::vector<int> kept;
  std::vector<int> centres;
  std::vector<int> leaf_counts;
};
Pruned prune_leaf_clusters(const Tree& t, std::int64_t cluster);

// ---- five-layer splitting ----------------------------------------------------

struct Star {
  int centre = 0;
  std::vector<int> leaves;
};

struct LeafAttach {
  int parent = 0;
  int leaf = 0;
};

/// Nested forests T1 <= T2 <= T3 <= T4 <= T5 = T, stored as the increments.
struct LayerDecomposition {
  int d = 0;
  std::int64_t n = 0;
  std::vector<int> small_vertices;  // V(T1)
  std::vector<Edge> small_edges;    // E(T1)
  std::vector<Star> stars;          // T2 \ T1
  std::vector<std::vector<LeafAttach>> inner_matchings;  // T3 \ T2, build order
  std::vector<std::array<int, 4>> paths;                 // T4 \ T3, (x, a, b, y)
  std::vector<std::vector<LeafAttach>> outer_matchings;  // T5 \ T4, build order

  /// Edge set of T_level, level in 1..5.
  std::vector<Edge> forest_edges(int level) const;
  std::vector<int> forest_vertices(int level) const;
};

/// Builds the layers by reverse peeling: leaf matchings, then length-3 bare
/// paths, then leaf matchings, then stars of >= d leaves. Keeps at least
/// ceil(n / d^6) vertices of `u` in T1. Throws DecompositionFailure when a
/// bound cannot be met.
LayerDecomposition split_layers(const Tree& t, int d, std::span<const int> u);

Check check_layers(const Tree& t, const LayerDecomposition& dec, std::span<const int> u);

/// d^8 clamped to avoid overflow.
std::int64_t layer_budget(int d);

}  // namespace ringel
