#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringel/ndcolour.hpp"
#include "ringel/tree.hpp"

namespace ringel {

/// Closed integer interval [lo, hi] of Z_{2n+1}, not wrapping past 2n.
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::int64_t size() const { return hi >= lo ? hi - lo + 1 : 0; }
  bool contains(std::int64_t v) const { return v >= lo && v <= hi; }
  bool operator==(const Interval&) const = default;
};

/// Tunables for the interval embedders. The logarithm defaults to ln n.
struct CaseCConfig {
  std::optional<double> log_value;
  std::optional<std::int64_t> d_min;
};

/// Parameters derived from n and the logarithm: L = ceil(log), the odd block
/// parameter k, the gap bound 16 L^3, and the default D_min = L^4.
struct LogParams {
  double log_value = 0;
  std::int64_t L = 0;
  std::int64_t k = 0;
  std::int64_t gap = 0;
  std::int64_t d_min = 0;
};
LogParams log_params(std::int64_t n, const CaseCConfig& cfg);

struct IntervalPlan {
  std::int64_t n = 0;
  Interval i0, i1, i2;
  std::vector<int> v1;  // tree vertices placed in I1
  std::vector<int> v2;  // tree vertices placed in I2; everything else is V0
};

struct PlanReport {
  LogParams params;
  bool meets_size_hypothesis = false;  // |I_p| >= 8 |V_p| L^3
};

/// Throws ParameterError when the plan cannot be used: overlapping or
/// out-of-range intervals, |I0| < 7|V0|, or fewer than |V_p| subintervals
/// of length k^3 in I_p.
PlanReport validate_plan(const Tree& t, const IntervalPlan& plan, const CaseCConfig& cfg);

/// Colour class of `c` for block parameter k: 0 for odd colours, s in 1..k
/// for the first even family, k + s for the second, -1 if unassigned.
int colour_class(std::int64_t c, std::int64_t k);

struct SmallTreeResult {
  Embedding embedding;
  LogParams params;
  PlanReport plan;
  std::vector<int> order;         // embedding order of tree vertices
  std::vector<int> subinterval;   // per tree vertex: index in I_p, or -1
  std::vector<int> class_index;   // per tree vertex: s in 1..k, 0 for V0/root
  bool claim_holds = true;        // class s >= 2 only once free < |V_p| / 2^(s-1)
  bool top_class_unused = true;   // no colour of C_1^k or C_2^k was used
  std::int64_t max_gap = 0;       // largest distance between consecutive images in I1 or I2
};

/// Greedy interval embedding: V0 into I0 on odd colours, V_p one vertex per
/// length-k^3 subinterval of I_p preferring the lowest colour class.
SmallTreeResult embed_small_tree_intervals(const Tree& t, const IntervalPlan& plan,
                                           const CaseCConfig& cfg = {});

/// Rainbow copy of an (n+1)-vertex tree with a vertex adjacent to at least
/// ceil(2n/3) leaves: that vertex goes to 1, the rest of the core into [n],
/// its leaves to 2n+2-c over the unused colours c.
Embedding embed_one_large_vertex(const Tree& t, std::int64_t n);

/// Core tree T' plus leaf counts d_i attached at centres v_i.
struct CaseCInstance {
  Tree base;
  std::vector<int> centres;
  std::vector<std::int64_t> leaf_counts;
  std::int64_t n = 0;
};

/// The (n+1)-vertex tree of an instance: base vertices keep their labels,
/// leaves follow in centre order.
Tree instance_tree(const CaseCInstance& inst);

struct TypedCentre {
  int vertex = 0;          // base-tree vertex
  int label = 0;           // 1-based label after the zig-zag relabelling
  int type = 0;            // 1, 2 or 3
  std::int64_t image = 0;
  std::int64_t d = 0;
  std::int64_t colour_lo = 0, colour_hi = 0;  // block C_i
  std::int64_t leaf_lo = 0, leaf_hi = 0;      // range of U_i
};

struct CaseCResult {
  Tree tree;            // instance_tree(inst)
  Embedding embedding;  // over `tree`
  bool delegated = false;
  std::int64_t m = 0;   // centres of types 1 and 2
  std::vector<TypedCentre> centres;
  bool interval_audit = true;  // every U_i inside its type's range
  std::string audit_note;
};

/// Multi-centre Case C embedding. Throws EmbeddingFailure tagged by stage.
CaseCResult embed_case_c(const CaseCInstance& inst, const CaseCConfig& cfg = {});

/// Prunes leaves around vertices with at least d_min leaves. `base_to_tree`
/// maps core vertices to labels of t and `leaf_labels[i]` lists the pruned
/// leaves of centre i.
struct TreeInstance {
  CaseCInstance inst;
  std::vector<int> base_to_tree;
  std::vector<std::vector<int>> leaf_labels;
};
TreeInstance case_c_instance_from_tree(const Tree& t, std::int64_t d_min);

/// Full pipeline on a tree with n+1 vertices, returning an embedding in the
/// labels of t.
Embedding embed_tree_case_c(const Tree& t, const CaseCConfig& cfg = {});

}  // namespace ringel
