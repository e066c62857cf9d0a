#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ringel/ndcolour.hpp"
#include "ringel/tree.hpp"

namespace ringel {

// ---- paths in the ND-colouring ------------------------------------------------

/// Walk x_0 = start, x_i = x_{i-1} + a_i; edge i has colour |a_i|.
struct PathSpec {
  Vertex start = 0;
  std::vector<std::int64_t> steps;

  std::vector<Vertex> vertices(std::int64_t n) const;
  std::vector<Colour> colours(std::int64_t n) const;
  /// All realized vertices distinct and every step non-zero mod 2n+1.
  bool valid(std::int64_t n) const;
};

/// Colours along a vertex sequence.
std::vector<Colour> path_colours(std::int64_t n, std::span<const Vertex> path);

// ---- 1-in-2 switchers -----------------------------------------------------------

struct TwoSwitcher {
  std::int64_t n = 0;
  Vertex x = 0, y = 0;
  Colour c1 = 0, c2 = 0;
  bool swapped = false;          // orientation used internally is (c2, c1)
  std::int64_t k = 0;            // first + 2k = second (mod 2n+1)
  std::array<Colour, 4> d{};     // d1 + d2 = d3 + d4 + k
  std::int64_t shift = 0;        // offset of the first step from x
  std::vector<Colour> shared;    // C', sorted, size 6
  std::vector<Vertex> p;         // x..y path using c1
  std::vector<Vertex> q;         // x..y path using c2

  const std::vector<Vertex>& path_for(Colour c) const;
  std::vector<Vertex> interior() const;  // sorted, distinct
};

/// Requires |X|, |C| <= n/25, x != y, c1 != c2.
TwoSwitcher build_two_switcher(std::int64_t n, Vertex x, Vertex y, Colour c1, Colour c2,
                               std::span<const Vertex> forbidden_vertices,
                               std::span<const Colour> forbidden_colours);

/// Same search without the size limits on the forbidden sets.
TwoSwitcher find_two_switcher(std::int64_t n, Vertex x, Vertex y, Colour c1, Colour c2,
                              const std::vector<char>& vertex_mask, const std::vector<char>& colour_mask);

Check verify_two_switcher(const TwoSwitcher& s, std::span<const Vertex> forbidden_vertices,
                          std::span<const Colour> forbidden_colours);

// ---- 1-in-l switchers -------------------------------------------------------------

struct MultiSwitcher {
  std::int64_t n = 0;
  Vertex x = 0, y = 0;
  std::vector<Colour> targets;   // c_1..c_l, ascending
  std::vector<Colour> links;     // d_1..d_l
  std::vector<Vertex> pivots;    // x_0..x_l
  std::vector<Vertex> mids;      // y_1..y_l
  std::vector<TwoSwitcher> chain;  // l-1 switchers, chain[i] joins pivots[i+1], pivots[i+2]
  std::vector<Colour> shared;    // C-bar, sorted
  std::vector<Vertex> vertex_set;  // X-bar, sorted (includes x and y)

  std::size_t size() const { return targets.size(); }
  std::int64_t path_length() const { return 7 * (static_cast<std::int64_t>(targets.size()) - 1) + 2; }
  /// x..y path using shared + {c}; throws ParameterError if c is not a target.
  std::vector<Vertex> select(Colour c) const;
};

/// Requires 2 <= |C| <= 100 and |X|, |C'| <= n/1000.
MultiSwitcher build_multi_switcher(std::int64_t n, Vertex x, Vertex y, std::span<const Colour> colours,
                                   std::span<const Vertex> forbidden_vertices,
                                   std::span<const Colour> forbidden_colours);

/// Disjoint switchers for the same (x, y, C), built one after another with
/// each excluding the vertices and colours of the earlier ones.
std::vector<MultiSwitcher> build_switcher_family(std::int64_t n, Vertex x, Vertex y,
                                                 std::span<const Colour> colours, int count);

Check verify_multi_switcher(const MultiSwitcher& s, std::span<const Vertex> forbidden_vertices,
                            std::span<const Colour> forbidden_colours);

/// Parameter validators for the path-finishing side conditions.
void validate_path_length(std::int64_t k);          // k = 7 mod 12 and 695 | k
void validate_integral_ratio(std::int64_t num, std::int64_t den, const char* what);

// ---- matching switchers -------------------------------------------------------------

struct MatchingSwitcher {
  std::vector<Colour> targets;  // c_1..c_l
  std::vector<Colour> links;    // d_1..d_{l-1}
  std::vector<Vertex> xs;       // x_1..x_l
  std::vector<Vertex> ys;       // y_1..y_l
  std::vector<Vertex> zs;       // z_1..z_{l-1}
  std::vector<Vertex> zps;      // z'_1..z'_{l-1}

  /// M_j for 0-based j, as (x, partner) pairs in x order.
  std::vector<std::pair<Vertex, Vertex>> matching(std::size_t j) const;
  std::vector<Vertex> partner_set() const;  // V', sorted, distinct
  /// Every edge of the gadget, as (x, partner) pairs.
  std::vector<std::pair<Vertex, Vertex>> edges() const;
};

struct MatchingPools {
  std::vector<Vertex> x_pool;       // X
  std::vector<Vertex> z_pool;       // Z
  std::vector<Vertex> link_pool;    // V_0
  std::vector<Colour> link_colours; // D_0
};

/// Greedy, targets first then links; ConstructionFailure carries the
/// blocking target or link index.
MatchingSwitcher build_matching_switcher(const Colouring& col, const MatchingPools& pools,
                                         std::span<const Colour> targets,
                                         const std::vector<char>& vertex_mask,
                                         const std::vector<char>& colour_mask);

Check verify_matching_switcher(const Colouring& col, const MatchingSwitcher& s);

// ---- robustly matchable bipartite graphs -------------------------------------------

struct RMBG {
  int h = 0;
  int max_degree_bound = 100;
  std::vector<std::vector<int>> adj;  // left vertex -> right vertices; Y = [0, 2h), Y' = [2h, 4h)

  int left() const { return 3 * h; }
  int right() const { return 4 * h; }
  int max_degree() const;
  /// Perfect matching of X onto Y + y0 (y0 holds indices in [2h, 4h)).
  std::vector<int> match(std::span<const int> y0) const;
};

/// Fixed instance for h <= 3, randomized generation with verification
/// otherwise. Throws ConstructionFailure when retries run out.
RMBG build_rmbg(int h, int max_degree = 100, std::uint64_t seed = 1);

/// Exhaustive over all h-subsets of Y' when h <= 5, else `samples` random ones.
Check verify_rmbg(const RMBG& g, int samples = 1000, std::uint64_t seed = 7);

// ---- flexible sets -------------------------------------------------------------------

struct FlexibleSet {
  RMBG graph;
  std::vector<Colour> right_colours;   // colour attached to each right vertex
  std::vector<MatchingSwitcher> units; // one per left vertex
  std::vector<Colour> fixed;           // C' = colours of Y
  std::vector<Colour> reservoir;       // C'' = colours of Y'

  std::size_t draw_size() const { return static_cast<std::size_t>(graph.h); }
};

/// Right vertices take `right_colours` (4h of them); each unit is a matching
/// switcher over the colours of its neighbourhood.
FlexibleSet assemble_flexible_set(const Colouring& col, const RMBG& g, std::span<const Colour> right_colours,
                                  const MatchingPools& pools);

/// Perfect rainbow matching with colour set exactly C* + C' + all link colours.
std::vector<std::pair<Vertex, Vertex>> absorb(const Colouring& col, const FlexibleSet& fs,
                                              std::span<const Colour> chosen);

/// Pools for an ND-coloured K_{2n+1}: residues mod 20 split into X, Z and V_0
/// blocks; link colours are every colour not in `reserved`.
MatchingPools default_pools(std::int64_t n, std::span<const Colour> reserved);

// ---- greedy matchings and connecting paths ---------------------------------------------

std::vector<std::pair<Vertex, Vertex>> cover_colours_matching(const Colouring& col, std::span<const Vertex> xs,
                                                              std::span<const Vertex> vs,
                                                              std::span<const Colour> required,
                                                              std::span<const Colour> fill);

/// Vertex-disjoint x_i - a - b - y_i paths, collectively rainbow.
std::vector<std::array<Vertex, 4>> connect_pairs_length3(const Colouring& col,
                                                         std::span<const std::pair<Vertex, Vertex>> pairs,
                                                         std::span<const Vertex> pool,
                                                         std::span<const Colour> colours);

}  // namespace ringel
