#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "ringel/error.hpp"
#include "ringel/rng.hpp"
#include "ringel/tree.hpp"

using namespace ringel;

namespace {

// Textbook decoder: repeatedly join the smallest leaf to the next code entry.
std::vector<Edge> textbook_prufer(const std::vector<int>& seq) {
  const int m = static_cast<int>(seq.size()) + 2;
  std::vector<int> deg(m, 1);
  for (int x : seq) ++deg[x];
  std::vector<Edge> out;
  for (int x : seq) {
    for (int v = 0; v < m; ++v) {
      if (deg[v] == 1) {
        out.push_back(make_edge(v, x));
        --deg[v];
        --deg[x];
        break;
      }
    }
  }
  int a = -1, b = -1;
  for (int v = 0; v < m; ++v) {
    if (deg[v] == 1) (a < 0 ? a : b) = v;
  }
  out.push_back(make_edge(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

// Every Pruefer sequence of length m-2, in lexicographic order.
template <class F>
void for_each_prufer(int m, F f) {
  std::vector<int> s(static_cast<std::size_t>(m - 2), 0);
  for (;;) {
    f(s);
    int i = m - 3;
    while (i >= 0 && s[i] == m - 1) s[i--] = 0;
    if (i < 0) return;
    ++s[i];
  }
}

Tree path_tree(int m) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < m; ++i) e.emplace_back(i, i + 1);
  return Tree::from_pairs(m, e);
}

Tree star_tree(int m) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < m; ++i) e.emplace_back(0, i);
  return Tree::from_pairs(m, e);
}

Tree relabel(const Tree& t, const std::vector<int>& p) {
  std::vector<std::pair<int, int>> e;
  for (const auto& x : t.edges()) e.emplace_back(p[x.u], p[x.v]);
  return Tree::from_pairs(t.size(), e);
}

bool is_bare_path(const Tree& t, const std::vector<int>& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!t.adjacent(p[i], p[i + 1])) return false;
  }
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (t.degree(p[i]) != 2) return false;
  }
  return true;
}

// Edge partition, size bounds and connectivity of each piece.
void check_division(const Tree& t, const std::vector<Subtree>& pieces, int m) {
  std::vector<Edge> all;
  for (const auto& p : pieces) {
    const int sz = static_cast<int>(p.vertices.size());
    if (t.size() > 1) {
      CHECK(sz >= m);
      CHECK(sz <= 4 * m);
    }
    REQUIRE(p.edges.size() + 1 == p.vertices.size());
    std::map<int, int> parent;
    for (int v : p.vertices) parent[v] = v;
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (const auto& e : p.edges) {
      REQUIRE(parent.count(e.u));
      REQUIRE(parent.count(e.v));
      parent[find(e.u)] = find(e.v);
      all.push_back(e);
    }
    std::set<int> roots;
    for (int v : p.vertices) roots.insert(find(v));
    CHECK(roots.size() == 1);
  }
  std::sort(all.begin(), all.end());
  CHECK(all == t.edges());
}

}  // namespace

TEST_CASE("Pruefer examples") {
  std::vector<int> empty;
  auto t = Tree::from_prufer(empty);
  CHECK(t.size() == 2);
  CHECK(t.edges() == std::vector<Edge>{{0, 1}});
  std::vector<int> s{0, 0, 0};
  auto star = Tree::from_prufer(s);
  CHECK(star.size() == 5);
  CHECK(star.degree(0) == 4);
  CHECK(star.edges() == textbook_prufer(s));
}

TEST_CASE("from_prufer matches the textbook decoder for every code, m <= 7") {
  for (int m = 2; m <= 7; ++m) {
    for_each_prufer(m, [&](const std::vector<int>& s) { REQUIRE(Tree::from_prufer(s).edges() == textbook_prufer(s)); });
  }
}

TEST_CASE("to_prufer inverts from_prufer on all labelled trees, m <= 9") {
  for (int m = 2; m <= 9; ++m) {
    std::int64_t count = 0;
    for_each_prufer(m, [&](const std::vector<int>& s) {
      const auto t = Tree::from_prufer(s);
      REQUIRE(t.to_prufer() == s);
      ++count;
    });
    std::int64_t cayley = 1;
    for (int i = 0; i < m - 2; ++i) cayley *= m;
    CHECK(count == cayley);
  }
}

TEST_CASE("edge list construction and validation") {
  std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}, {0, 3}};
  auto t = Tree::from_pairs(4, e);
  CHECK(t.degree_sequence() == std::vector<int>{2, 2, 1, 1});
  CHECK(t.leaves() == std::vector<int>{2, 3});

  std::vector<std::pair<int, int>> cyc{{0, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(Tree::from_pairs(4, cyc), ValidationError);
  std::vector<std::pair<int, int>> disc{{0, 1}, {2, 3}, {2, 3}};
  CHECK_THROWS_AS(Tree::from_pairs(4, disc), ValidationError);
  std::vector<std::pair<int, int>> loop{{0, 0}, {0, 1}, {1, 2}};
  CHECK_THROWS_AS(Tree::from_pairs(4, loop), ValidationError);
  std::vector<std::pair<int, int>> few{{0, 1}};
  CHECK_THROWS_AS(Tree::from_pairs(4, few), ValidationError);
}

TEST_CASE("text formats") {
  auto t = parse_tree_text("4\n0 1\n1 2\n0 3\n");
  CHECK(t.size() == 4);
  CHECK(parse_tree_text(to_tree_text(t)) == t);
  CHECK_THROWS_AS(parse_tree_text("4\n0 1\n1 x\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_text(""), ParseError);
  CHECK_THROWS_AS(parse_tree_text("3\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_text("3\n0 1\n0 1\n"), ValidationError);
  auto p = parse_prufer_text("0 0 0\n");
  CHECK(p.size() == 5);
  CHECK(p.degree(0) == 4);
}

TEST_CASE("isomorphism classes") {
  // Counts of unlabelled trees on m = 2..12 vertices, frozen from an
  // independent enumerator (networkx.nonisomorphic_trees).
  const std::vector<std::size_t> expected{1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551};
  for (int m = 2; m <= 12; ++m) CHECK(enumerate_trees(m).size() == expected[m - 2]);

  // Pruefer dedup as a second route for m <= 8.
  for (int m = 2; m <= 8; ++m) {
    std::set<std::string> forms;
    for_each_prufer(m, [&](const std::vector<int>& s) { forms.insert(canonical_form(Tree::from_prufer(s))); });
    std::set<std::string> mine;
    for (const auto& t : enumerate_trees(m)) mine.insert(canonical_form(t));
    CHECK(forms == mine);
  }
}

TEST_CASE("canonical form is invariant under relabelling") {
  auto rng = stream_for(5, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 30);
    auto t = random_tree(m, rng);
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(canonical_form(relabel(t, p)) == canonical_form(t));
  }
  CHECK(canonical_form(path_tree(5)) != canonical_form(star_tree(5)));
}

TEST_CASE("leaves or bare paths") {
  auto p = leaves_or_bare_paths(path_tree(40), 3);
  CHECK_FALSE(p.has_leaves);
  CHECK(p.threshold == 4);
  CHECK(p.paths.size() >= 3);
  CHECK(static_cast<std::int64_t>(p.paths.size()) >= p.threshold);
  std::set<int> used;
  for (const auto& path : p.paths) {
    CHECK(path.size() == 4);
    CHECK(is_bare_path(path_tree(40), path));
    for (int v : path) CHECK(used.insert(v).second);
  }

  auto s = leaves_or_bare_paths(star_tree(40), 3);
  CHECK(s.has_leaves);
  CHECK(s.leaves.size() >= 4);

  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < 63; ++v) e.emplace_back((v - 1) / 2, v);
  auto bin = Tree::from_pairs(63, e);
  auto b = leaves_or_bare_paths(bin, 3);
  CHECK(b.has_leaves);
  CHECK(b.leaves.size() >= 5);
  for (int v : b.leaves) CHECK(bin.is_leaf(v));

  CHECK_THROWS_AS(leaves_or_bare_paths(path_tree(40), 2), PreconditionError);
  CHECK_THROWS_AS(leaves_or_bare_paths(path_tree(11), 3), PreconditionError);
}

TEST_CASE("bare path packing on a path graph") {
  // A path on m vertices has one maximal chain; greedy segments of k edges
  // separated by one edge give floor((m - 1 + 1) / (k + 1)) paths.
  for (int m = 4; m <= 60; ++m) {
    for (int k = 1; k <= 6; ++k) {
      auto paths = pack_bare_paths(path_tree(m), k);
      CHECK(static_cast<int>(paths.size()) == m / (k + 1));
    }
  }
}

TEST_CASE("divide_tree") {
  auto single = divide_tree(path_tree(12), 3);
  CHECK(single.size() == 1);
  check_division(path_tree(12), single, 3);

  auto p = divide_tree(path_tree(20), 3);
  check_division(path_tree(20), p, 3);

  auto s = divide_tree(star_tree(17), 4);
  check_division(star_tree(17), s, 4);
  for (const auto& piece : s) CHECK(std::binary_search(piece.vertices.begin(), piece.vertices.end(), 0));

  CHECK_THROWS_AS(divide_tree(path_tree(3), 4), PreconditionError);

  auto rng = stream_for(17, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 7);
    const int size = m + static_cast<int>(rng() % 120);
    auto t = random_tree(size, rng);
    check_division(t, divide_tree(t, m), m);
  }
}

TEST_CASE("case division examples") {
  auto star = classify_case(star_tree(200000), Rational::parse("0.05"));
  CHECK(star.which == TreeCase::C);
  CHECK(star.pruned_vertices == std::vector<int>{0});
  CHECK(check_witness(star_tree(200000), star).ok);

  auto path = path_tree(10000);
  auto pw = classify_case(path, Rational::parse("0.01"));
  CHECK(pw.which == TreeCase::B);
  CHECK(pw.thresholds.path_count == 1);
  CHECK(pw.thresholds.path_length == 100);
  CHECK(pw.paths.size() >= 1);
  for (const auto& bp : pw.paths) {
    CHECK(bp.size() >= 101);
    CHECK(is_bare_path(path, bp));
  }
  CHECK(check_witness(path, pw).ok);

  std::vector<std::pair<int, int>> e;
  for (int leg = 0; leg < 1000; ++leg) {
    e.emplace_back(0, 1 + 2 * leg);
    e.emplace_back(1 + 2 * leg, 2 + 2 * leg);
  }
  auto spider = Tree::from_pairs(2001, e);
  auto sw = classify_case(spider, Rational::parse("0.05"));
  CHECK(sw.which == TreeCase::A);
  CHECK(sw.leaves.size() == 1000);
  CHECK(check_witness(spider, sw).ok);
}

TEST_CASE("case division parameters") {
  CHECK_THROWS_AS(classify_case(path_tree(100), Rational::parse("0.06")), ParameterError);
  CHECK_THROWS_AS(Rational::parse("0"), ParameterError);
  CHECK_THROWS_AS(Rational::parse("abc"), ParameterError);
  CHECK(Rational::parse("1/100") == Rational::parse("0.01"));
  auto th = case_thresholds(10000, Rational::parse("0.01"));
  CHECK(th.cluster_leaves == 100000000);
  CHECK(th.pruned_max == 100);
  CHECK(th.path_length == 100);
  CHECK(th.path_count == 1);
  CHECK(th.leaf_count == 1);
}

TEST_CASE("tampered witnesses are rejected") {
  auto path = path_tree(10000);
  auto w = classify_case(path, Rational::parse("0.01"));
  w.paths[0].pop_back();
  CHECK_FALSE(check_witness(path, w).ok);
}

TEST_CASE("split_layers on a star") {
  auto t = star_tree(51);
  std::vector<int> u(51);
  std::iota(u.begin(), u.end(), 0);
  auto dec = split_layers(t, 3, u);
  CHECK(dec.small_vertices == std::vector<int>{0});
  REQUIRE(dec.stars.size() == 1);
  CHECK(dec.stars[0].leaves.size() == 50);
  CHECK(dec.inner_matchings.empty());
  CHECK(dec.paths.empty());
  CHECK(dec.outer_matchings.empty());
  CHECK(check_layers(t, dec, u).ok);
}

TEST_CASE("split_layers on a broom") {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < 20; ++i) e.emplace_back(i, i + 1);
  for (int j = 0; j < 30; ++j) e.emplace_back(19, 20 + j);
  auto t = Tree::from_pairs(50, e);
  std::vector<int> u(50);
  std::iota(u.begin(), u.end(), 0);
  auto dec = split_layers(t, 3, u);
  auto chk = check_layers(t, dec, u);
  CHECK_MESSAGE(chk.ok, chk.reason);
  CHECK(dec.forest_edges(5) == t.edges());
}

TEST_CASE("split_layers on random trees reassembles the tree") {
  auto rng = stream_for(23, 0);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_tree(200, rng);
    std::vector<int> all(200);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> u(all.begin(), all.begin() + 50);
    auto dec = split_layers(t, 3, u);
    auto chk = check_layers(t, dec, u);
    CHECK_MESSAGE(chk.ok, chk.reason);
    CHECK(dec.forest_edges(5) == t.edges());
    for (int level = 1; level < 5; ++level) {
      auto a = dec.forest_edges(level), b = dec.forest_edges(level + 1);
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
}

TEST_CASE("split_layers preconditions") {
  auto t = path_tree(100);
  std::vector<int> u{0, 1};
  CHECK_THROWS_AS(split_layers(t, 3, u), PreconditionError);
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  CHECK_THROWS_AS(split_layers(t, 1, v), ParameterError);
}

TEST_CASE("centroid") {
  CHECK(centroid(path_tree(5)) == 2);
  CHECK(centroid(path_tree(4)) == 1);
  CHECK(centroid(star_tree(9)) == 0);
}
