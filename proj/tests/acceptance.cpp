#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>

#include "json.hpp"
#include "ringel/case_c.hpp"
#include "ringel/certify.hpp"
#include "ringel/cli.hpp"
#include "ringel/gadgets.hpp"
#include "ringel/ndcolour.hpp"
#include "ringel/rng.hpp"
#include "ringel/search.hpp"
#include "ringel/tree.hpp"

using namespace ringel;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

Outcome c1_two_factorization() {
  for (std::int64_t n = 1; n <= 1000; ++n) {
    if (!verify_two_factorization(n)) return {false, "fails at n = " + std::to_string(n)};
  }
  return {true, "n = 1..1000"};
}

Outcome c2_four_edge() {
  auto t = parse_tree_text("5\n0 3\n2 3\n1 3\n0 4\n");
  auto r = find_rainbow_embedding(t, 4);
  if (r.status != SearchStatus::Found) return {false, "no rainbow copy"};
  auto copies = decompose_by_shifts(r.embedding, t);
  std::set<std::pair<Vertex, Vertex>> edges;
  for (const auto& c : copies) {
    for (const auto& e : t.edges()) {
      edges.insert({std::min(c.image[e.u], c.image[e.v]), std::max(c.image[e.u], c.image[e.v])});
    }
  }
  const bool ok = copies.size() == 9 && edges.size() == 36 && verify_decomposition(copies, t).ok;
  return {ok, std::to_string(copies.size()) + " copies, " + std::to_string(edges.size()) + " distinct edges"};
}

Outcome c3_sweep() {
  SweepOptions sw;
  sw.max_edges = 10;
  auto j = json::parse(cmd_sweep(sw).out);
  const std::size_t want = 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47 + 106 + 235;
  const bool ok = j["all_classes_decomposed"] == true && j["classes"] == want;
  return {ok, std::to_string(j["classes"].get<int>()) + " classes, " + j["summary"].get<std::string>()};
}

Outcome c4_graceful() {
  std::vector<Tree> all;
  for (int m = 2; m <= 12; ++m) {
    auto ts = enumerate_trees(m);
    all.insert(all.end(), ts.begin(), ts.end());
  }
  std::atomic<int> bad{0};
  parallel_for(static_cast<int>(all.size()), [&](int i) {
    const auto& t = all[i];
    auto g = find_graceful_labelling(t);
    if (g.status != SearchStatus::Found || !is_graceful(t, g.labelling) ||
        !verify_rainbow(graceful_to_embedding(t, g.labelling, t.num_edges()), t).ok) {
      ++bad;
    }
  });
  return {bad == 0, std::to_string(all.size()) + " trees, " + std::to_string(bad.load()) + " failures"};
}

Outcome c5_two_switcher() {
  const std::int64_t n = 1000, M = 2001;
  std::atomic<int> bad{0};
  parallel_for(1000, [&](int i) {
    auto rng = stream_for(5, static_cast<std::uint64_t>(i));
    auto pick = [&](std::int64_t lo, std::int64_t hi) { return lo + static_cast<std::int64_t>(rng() % (hi - lo + 1)); };
    const Vertex x = pick(0, M - 1);
    Vertex y = pick(0, M - 1);
    if (y == x) y = (x + 1) % M;
    const Colour c1 = pick(1, n);
    Colour c2 = pick(1, n);
    if (c2 == c1) c2 = c1 % n + 1;
    std::set<Vertex> X;
    while (X.size() < 40) {
      Vertex v = pick(0, M - 1);
      if (v != x && v != y) X.insert(v);
    }
    std::set<Colour> C;
    while (C.size() < 40) {
      Colour c = pick(1, n);
      if (c != c1 && c != c2) C.insert(c);
    }
    std::vector<Vertex> xv(X.begin(), X.end());
    std::vector<Colour> cv(C.begin(), C.end());
    try {
      auto s = build_two_switcher(n, x, y, c1, c2, xv, cv);
      auto cp = path_colours(n, s.p), cq = path_colours(n, s.q);
      std::set<Colour> a(cp.begin(), cp.end()), b(cq.begin(), cq.end()), sym, both;
      std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(sym, sym.end()));
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(both, both.end()));
      const bool ok = verify_two_switcher(s, xv, cv).ok && cp.size() == 7 && cq.size() == 7 &&
                      sym == std::set<Colour>{c1, c2} && both.size() == 6;
      if (!ok) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  });
  return {bad == 0, "1000 instances at n = 1000, " + std::to_string(bad.load()) + " failures"};
}

Outcome c6_multi_switcher() {
  std::vector<Colour> cs;
  for (int i = 0; i < 100; ++i) cs.push_back(1000 + 37 * i);
  auto s = build_multi_switcher(100000, 0, 60000, cs, {}, {});
  bool ok = s.shared.size() == 694 && s.path_length() == 695 && verify_multi_switcher(s, {}, {}).ok;
  for (Colour c : cs) {
    auto p = s.select(c);
    auto got = path_colours(100000, p);
    std::sort(got.begin(), got.end());
    auto want = s.shared;
    want.push_back(c);
    std::sort(want.begin(), want.end());
    ok = ok && got == want && p.size() == 696 && p.front() == 0 && p.back() == 60000;
  }
  return {ok, std::to_string(s.shared.size()) + " shared colours, path length " + std::to_string(s.path_length())};
}

// Rainbow perfect matchings inside the gadget with colour set D + {c_j} are exactly M_j.
bool matching_family_exact(const Colouring& col, const MatchingSwitcher& s) {
  std::map<Vertex, std::vector<Vertex>> opts;
  for (auto [x, v] : s.edges()) opts[x].push_back(v);
  std::map<std::size_t, std::vector<std::vector<std::pair<Vertex, Vertex>>>> found;
  std::vector<std::pair<Vertex, Vertex>> cur;
  std::set<Vertex> used;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == s.xs.size()) {
      std::vector<Colour> cs;
      for (auto [x, v] : cur) cs.push_back(col.colour(x, v));
      std::sort(cs.begin(), cs.end());
      for (std::size_t j = 0; j < s.targets.size(); ++j) {
        auto want = s.links;
        want.push_back(s.targets[j]);
        std::sort(want.begin(), want.end());
        if (cs == want) found[j].push_back(cur);
      }
      return;
    }
    for (Vertex v : opts[s.xs[i]]) {
      if (!used.insert(v).second) continue;
      cur.emplace_back(s.xs[i], v);
      rec(i + 1);
      cur.pop_back();
      used.erase(v);
    }
  };
  rec(0);
  for (std::size_t j = 0; j < s.targets.size(); ++j) {
    if (found[j].size() != 1 || found[j][0] != s.matching(j)) return false;
  }
  return true;
}

Outcome c7_matching_switcher() {
  int checked = 0;
  for (std::size_t ell = 1; ell <= 6; ++ell) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      std::vector<Colour> t;
      for (std::size_t i = 0; i < ell; ++i) t.push_back(static_cast<Colour>(3 + 5 * i + seed));
      auto pools = default_pools(60, t);
      std::vector<char> vm(121, 0), cm(61, 0);
      MatchingSwitcher s;
      if (seed % 2 == 0) {
        NDColouring nd(60);
        s = build_matching_switcher(nd, pools, t, vm, cm);
        if (!verify_matching_switcher(nd, s).ok || !matching_family_exact(nd, s)) return {false, "l = " + std::to_string(ell)};
      } else {
        auto col = random_relabelled_nd(60, seed);
        s = build_matching_switcher(col, pools, t, vm, cm);
        if (!verify_matching_switcher(col, s).ok || !matching_family_exact(col, s)) return {false, "l = " + std::to_string(ell)};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " gadgets with l <= 6"};
}

Outcome c8_rmbg() {
  for (int h = 1; h <= 5; ++h) {
    if (!verify_rmbg(build_rmbg(h)).ok) return {false, "exhaustive check fails at h = " + std::to_string(h)};
  }
  std::atomic<int> bad{0};
  parallel_for(45, [&](int i) {
    const int h = 6 + i;
    auto g = build_rmbg(h);
    if (g.max_degree() > 100 || !verify_rmbg(g, 1000, static_cast<std::uint64_t>(h)).ok) ++bad;
  });
  return {bad == 0, "exhaustive for h <= 5, 1000 samples for 6 <= h <= 50"};
}

Outcome c9_flexible_set() {
  NDColouring nd(100);
  auto g = build_rmbg(2);
  std::vector<Colour> rc{1, 2, 3, 4, 5, 6, 7, 8};
  auto fs = assemble_flexible_set(nd, g, rc, default_pools(100, rc));
  std::set<Vertex> xs;
  std::multiset<Colour> links;
  for (const auto& u : fs.units) {
    xs.insert(u.xs.begin(), u.xs.end());
    links.insert(u.links.begin(), u.links.end());
  }
  int draws = 0;
  for (std::size_t a = 0; a < fs.reservoir.size(); ++a) {
    for (std::size_t b = a + 1; b < fs.reservoir.size(); ++b) {
      std::vector<Colour> chosen{fs.reservoir[a], fs.reservoir[b]};
      auto m = absorb(nd, fs, chosen);
      std::set<Vertex> left, right;
      std::multiset<Colour> cs;
      for (auto [x, v] : m) {
        left.insert(x);
        right.insert(v);
        cs.insert(nd.colour(x, v));
      }
      std::multiset<Colour> want(chosen.begin(), chosen.end());
      want.insert(fs.fixed.begin(), fs.fixed.end());
      want.insert(links.begin(), links.end());
      if (left != xs || right.size() != m.size() || cs != want) return {false, "draw " + std::to_string(draws)};
      ++draws;
    }
  }
  return {draws == 6, std::to_string(draws) + " admissible draws absorbed"};
}

Outcome c10_case_c() {
  int good_a = 0;
  for (int i = 0; i < 100; ++i) {
    auto rng = stream_for(10, static_cast<std::uint64_t>(i));
    const std::int64_t n = 100 + static_cast<std::int64_t>(rng() % 9901);
    const int core = 1 + static_cast<int>(rng() % (n / 3));
    auto base = random_tree(core, rng);
    std::vector<std::pair<int, int>> ed;
    for (const auto& e : base.edges()) ed.emplace_back(e.u, e.v);
    const int hub = static_cast<int>(rng() % core);
    for (int v = core; v <= n; ++v) ed.emplace_back(hub, v);
    auto t = Tree::from_pairs(static_cast<int>(n + 1), ed);
    auto e = embed_one_large_vertex(t, n);
    if (verify_rainbow(e, t).ok) ++good_a;
  }

  struct Inst {
    int path;
    std::vector<int> centres;
    std::vector<std::int64_t> leaves;
  };
  const std::vector<Inst> insts{{60, {10, 30, 50}, {3400, 3300, 3241}},
                                {40, {5, 20, 35}, {3000, 3500, 3461}},
                                {80, {0, 40, 79}, {5000, 2500, 2421}},
                                {30, {15}, {9971}},
                                {50, {10, 20, 30, 40}, {2600, 2500, 2450, 2401}}};
  int good_b = 0;
  for (const auto& in : insts) {
    CaseCInstance inst;
    std::vector<std::pair<int, int>> ed;
    for (int v = 0; v + 1 < in.path; ++v) ed.emplace_back(v, v + 1);
    inst.base = Tree::from_pairs(in.path, ed);
    inst.centres = in.centres;
    inst.leaf_counts = in.leaves;
    inst.n = 10000;
    try {
      auto r = embed_case_c(inst, CaseCConfig{2.0, 1000});
      auto cs = edge_colours(r.embedding, r.tree.edges());
      std::sort(cs.begin(), cs.end());
      bool each_once = cs.size() == 10000;
      for (std::size_t k = 0; each_once && k < cs.size(); ++k) each_once = cs[k] == static_cast<Colour>(k + 1);
      if (r.tree.size() == 10001 && verify_rainbow(r.embedding, r.tree).ok && each_once &&
          (r.delegated || r.interval_audit)) {
        ++good_b;
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "case C instance failed: %s\n", e.what());
    }
  }
  return {good_a == 100 && good_b == static_cast<int>(insts.size()),
          "(a) " + std::to_string(good_a) + "/100, (b) " + std::to_string(good_b) + "/" + std::to_string(insts.size())};
}

Outcome c11_case_division() {
  const auto delta = Rational::parse("0.01");
  std::atomic<int> bad{0};
  std::array<std::atomic<int>, 3> by_case{};
  parallel_for(10000, [&](int i) {
    auto rng = stream_for(11, static_cast<std::uint64_t>(i));
    auto t = random_tree(10001, rng);
    auto w = classify_case(t, delta);
    if (!check_witness(t, w).ok) ++bad;
    ++by_case[static_cast<int>(w.which)];
  });
  return {bad == 0, "10000 trees, A/B/C = " + std::to_string(by_case[0].load()) + "/" +
                        std::to_string(by_case[1].load()) + "/" + std::to_string(by_case[2].load()) + ", " +
                        std::to_string(bad.load()) + " invalid"};
}

Outcome c12_determinism() {
  std::vector<std::string> trees{"5\n0 3\n2 3\n1 3\n0 4\n",
                                 "13\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n1 7\n7 8\n8 9\n2 10\n10 11\n11 12\n"};
  auto rng = stream_for(12, 0);
  for (int i = 0; i < 4; ++i) trees.push_back(to_tree_text(random_tree(16, rng)));
  int same = 0, total = 0;
  for (const auto& text : trees) {
    for (const char* mode : {"auto", "search", "graceful"}) {
      EmbedOptions o;
      o.mode = mode;
      o.strategy = "restart";
      o.seed = 42;
      o.threads = 1;
      auto a = read_certificate(cmd_embed(text, o).out).hash;
      o.threads = 4;
      auto b = read_certificate(cmd_embed(text, o).out).hash;
      same += a == b;
      ++total;
    }
  }
  SweepOptions sw;
  sw.max_edges = 7;
  const auto d1 = json::parse(cmd_sweep(sw).out)["certificates_digest"];
  sw.threads = 1;
  const auto d2 = json::parse(cmd_sweep(sw).out)["certificates_digest"];
  same += d1 == d2;
  ++total;
  return {same == total, std::to_string(same) + "/" + std::to_string(total) + " repeated runs identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"ND-colouring 2-factorization", c1_two_factorization},
      {"four-edge tree in K_9", c2_four_edge},
      {"desk-scale sweep, <= 10 edges", c3_sweep},
      {"graceful suite, <= 12 vertices", c4_graceful},
      {"two-switcher contract", c5_two_switcher},
      {"multi-switcher accounting", c6_multi_switcher},
      {"matching switcher enumeration", c7_matching_switcher},
      {"RMBG robustness", c8_rmbg},
      {"flexible-set absorption", c9_flexible_set},
      {"case-C embedders", c10_case_c},
      {"case-division totality", c11_case_division},
      {"determinism", c12_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("criterion %2zu: %s  %s: %s (%.2fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
