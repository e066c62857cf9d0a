#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "ringel/case_c.hpp"
#include "ringel/certify.hpp"
#include "ringel/error.hpp"
#include "ringel/rng.hpp"

using namespace ringel;

namespace {

Tree star_tree(int m) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < m; ++i) e.emplace_back(0, i);
  return Tree::from_pairs(m, e);
}

Tree path_tree(int m) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < m; ++i) e.emplace_back(i, i + 1);
  return Tree::from_pairs(m, e);
}

// Every colour of [n] exactly once over the tree edges.
bool uses_each_colour_once(const Embedding& e, const Tree& t) {
  auto cs = edge_colours(e, t.edges());
  std::sort(cs.begin(), cs.end());
  std::vector<Colour> all(static_cast<std::size_t>(e.n));
  std::iota(all.begin(), all.end(), 1);
  return cs == all;
}

}  // namespace

TEST_CASE("log parameters") {
  auto p = log_params(10000, {});
  CHECK(p.L == 10);
  CHECK(p.k == 17);
  CHECK(p.gap == 16000);
  CHECK(p.d_min == 10000);
  auto q = log_params(100000, CaseCConfig{2.0, std::nullopt});
  CHECK(q.L == 2);
  CHECK(q.k == 3);
  CHECK(q.gap == 128);
  CHECK(q.d_min == 16);
}

TEST_CASE("colour classes") {
  for (Colour c = 1; c <= 99; c += 2) CHECK(colour_class(c, 3) == 0);
  CHECK(colour_class(2, 3) == 2);
  CHECK(colour_class(8, 3) == 1);
  CHECK(colour_class(6, 3) == 6);
  CHECK(colour_class(14, 3) == -1);
  // Each even residue 1..2k mod 2k+1 lands in its own class.
  std::set<int> seen;
  for (Colour c = 2; c <= 14; c += 2) seen.insert(colour_class(c, 3));
  CHECK(seen == std::set<int>{-1, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("one large vertex: star") {
  auto t = star_tree(11);
  auto e = embed_one_large_vertex(t, 10);
  CHECK(e.image[0] == 1);
  std::vector<Vertex> leaves(e.image.begin() + 1, e.image.end());
  std::sort(leaves.begin(), leaves.end());
  CHECK(leaves == std::vector<Vertex>{0, 12, 13, 14, 15, 16, 17, 18, 19, 20});
  CHECK(verify_rainbow(e, t).ok);
  CHECK(uses_each_colour_once(e, t));
}

TEST_CASE("one large vertex: K_{1,2}") {
  auto t = star_tree(3);
  auto e = embed_one_large_vertex(t, 2);
  CHECK(e.image[0] == 1);
  std::set<Vertex> leaves{e.image[1], e.image[2]};
  CHECK(leaves == std::set<Vertex>{0, 4});
  CHECK(verify_rainbow(e, t).ok);
}

TEST_CASE("one large vertex: broom") {
  std::vector<std::pair<int, int>> ed{{0, 1}, {1, 2}};
  for (int j = 0; j < 7; ++j) ed.emplace_back(0, 3 + j);
  auto t = Tree::from_pairs(10, ed);
  auto e = embed_one_large_vertex(t, 9);
  CHECK(verify_rainbow(e, t).ok);
  CHECK(uses_each_colour_once(e, t));
  for (int v : {0, 1, 2}) {
    CHECK(e.image[v] >= 1);
    CHECK(e.image[v] <= 9);
  }
  for (int v = 3; v < 10; ++v) CHECK((e.image[v] >= 11 || e.image[v] == 0));
}

TEST_CASE("one large vertex: precondition") {
  CHECK_THROWS_AS(embed_one_large_vertex(path_tree(10), 9), PreconditionError);
  CHECK_THROWS_AS(embed_one_large_vertex(star_tree(10), 10), PreconditionError);
}

TEST_CASE("one large vertex: random instances") {
  auto rng = stream_for(31, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const std::int64_t n = 100 + static_cast<std::int64_t>(rng() % 2000);
    const int core = 1 + static_cast<int>(rng() % (n / 3));
    auto base = random_tree(core, rng);
    std::vector<std::pair<int, int>> ed;
    for (const auto& x : base.edges()) ed.emplace_back(x.u, x.v);
    const int hub = static_cast<int>(rng() % core);
    for (int v = core; v <= n; ++v) ed.emplace_back(hub, v);
    auto t = Tree::from_pairs(static_cast<int>(n + 1), ed);
    auto e = embed_one_large_vertex(t, n);
    REQUIRE(verify_rainbow(e, t).ok);
    CHECK(uses_each_colour_once(e, t));
  }
}

TEST_CASE("small tree: degenerate plan uses odd colours in I0") {
  auto rng = stream_for(41, 0);
  auto t = random_tree(50, rng);
  IntervalPlan plan;
  plan.n = 10000;
  plan.i0 = {8300, 9000};
  plan.i1 = {7000, 7100};
  plan.i2 = {9100, 9200};
  auto r = embed_small_tree_intervals(t, plan);
  CHECK(verify_rainbow(r.embedding, t).ok);
  for (auto x : r.embedding.image) CHECK(plan.i0.contains(x));
  for (auto c : edge_colours(r.embedding, t.edges())) CHECK(c % 2 == 1);
}

TEST_CASE("small tree: full-size plan at n = 1e5") {
  auto rng = stream_for(43, 0);
  auto t = random_tree(900, rng);
  IntervalPlan plan;
  plan.n = 100000;
  plan.i0 = {83000, 90000};
  plan.i1 = {70000, 71000};
  plan.i2 = {91000, 92000};
  for (int v = 1; v <= 10; ++v) plan.v1.push_back(v);
  for (int v = 11; v <= 20; ++v) plan.v2.push_back(v);
  CaseCConfig cfg{2.0, std::nullopt};
  auto r = embed_small_tree_intervals(t, plan, cfg);
  CHECK(verify_rainbow(r.embedding, t).ok);
  std::set<int> sub1, sub2;
  for (int v : plan.v1) {
    CHECK(plan.i1.contains(r.embedding.image[v]));
    CHECK(sub1.insert(r.subinterval[v]).second);
  }
  for (int v : plan.v2) {
    CHECK(plan.i2.contains(r.embedding.image[v]));
    CHECK(sub2.insert(r.subinterval[v]).second);
  }
  for (int v = 21; v < 900; ++v) CHECK(plan.i0.contains(r.embedding.image[v]));
  CHECK(plan.i0.contains(r.embedding.image[0]));
  CHECK(r.max_gap <= r.params.gap);
  CHECK(r.claim_holds);
  CHECK(r.top_class_unused);
  // No edge colour falls into the top classes k and 2k.
  for (auto c : edge_colours(r.embedding, t.edges())) {
    int cls = colour_class(c, r.params.k);
    CHECK(cls != static_cast<int>(r.params.k));
    CHECK(cls != static_cast<int>(2 * r.params.k));
  }
}

TEST_CASE("small tree: plan validation") {
  auto rng = stream_for(47, 0);
  auto t = random_tree(50, rng);
  IntervalPlan plan;
  plan.n = 10000;
  plan.i0 = {8300, 9000};
  plan.i1 = {8900, 9100};  // overlaps I0
  plan.i2 = {9100, 9200};
  CHECK_THROWS_AS(validate_plan(t, plan, {}), ParameterError);
  plan.i1 = {7000, 7100};
  plan.i0 = {8300, 8500};  // |I0| < 7 |V0|
  CHECK_THROWS_AS(validate_plan(t, plan, {}), ParameterError);
  plan.i0 = {8300, 9000};
  plan.n = 1000;  // |T| > n/100
  CHECK_THROWS_AS(validate_plan(t, plan, {}), ParameterError);
}

TEST_CASE("case C: multi-centre instance at n = 1e4") {
  CaseCInstance inst;
  inst.base = path_tree(60);
  inst.centres = {10, 30, 50};
  inst.leaf_counts = {3400, 3300, 3241};
  inst.n = 10000;
  CaseCConfig cfg{2.0, 1000};
  auto r = embed_case_c(inst, cfg);
  CHECK_FALSE(r.delegated);
  CHECK(r.m == 1);
  CHECK(r.tree.size() == 10001);
  CHECK(verify_rainbow(r.embedding, r.tree).ok);
  CHECK(uses_each_colour_once(r.embedding, r.tree));
  CHECK_MESSAGE(r.interval_audit, r.audit_note);

  std::vector<TypedCentre> type3;
  for (const auto& c : r.centres) {
    if (c.type == 3) type3.push_back(c);
  }
  std::sort(type3.begin(), type3.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < type3.size(); ++i) CHECK(type3[i - 1].colour_hi < type3[i].colour_lo);
}

TEST_CASE("case C: delegation to one large vertex") {
  CaseCInstance inst;
  inst.base = path_tree(5);
  inst.centres = {2};
  inst.leaf_counts = {996};
  inst.n = 1000;
  CaseCConfig cfg{2.0, 1};
  auto r = embed_case_c(inst, cfg);
  CHECK(r.delegated);
  CHECK(r.embedding == embed_one_large_vertex(r.tree, 1000));
  CHECK(verify_rainbow(r.embedding, r.tree).ok);
}

TEST_CASE("case C: preconditions") {
  CaseCInstance inst;
  inst.base = path_tree(60);
  inst.centres = {10, 30, 50};
  inst.leaf_counts = {3400, 3300, 3241};
  inst.n = 10000;
  CHECK_THROWS_AS(embed_case_c(inst, CaseCConfig{}), PreconditionError);
  inst.leaf_counts = {3400, 3300, 3240};
  CHECK_THROWS_AS(embed_case_c(inst, CaseCConfig{2.0, 1000}), ParameterError);
}

TEST_CASE("case C from a tree") {
  CaseCInstance inst;
  inst.base = path_tree(60);
  inst.centres = {10, 30, 50};
  inst.leaf_counts = {3400, 3300, 3241};
  inst.n = 10000;
  auto t = instance_tree(inst);
  auto ti = case_c_instance_from_tree(t, 1000);
  CHECK(ti.inst.base.size() == 60);
  CHECK(ti.inst.centres.size() == 3);
  auto e = embed_tree_case_c(t, CaseCConfig{2.0, 1000});
  CHECK(verify_rainbow(e, t).ok);
  CHECK(uses_each_colour_once(e, t));
}
