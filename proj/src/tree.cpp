#include "ringel/tree.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "ringel/error.hpp"

namespace ringel {

namespace {

using i128 = __int128;

std::int64_t ceil_div(i128 a, i128 b) { return static_cast<std::int64_t>((a + b - 1) / b); }

i128 pow128(std::int64_t base, int e) {
  i128 r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::vector<std::int64_t> read_ints(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == ',') {
      ++i;
      continue;
    }
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc() || p == text.data() + i) {
      throw ParseError("unexpected character '" + std::string(1, ch) + "' at offset " + std::to_string(i));
    }
    out.push_back(v);
    i = static_cast<std::size_t>(p - text.data());
  }
  return out;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

// ---- Tree ------------------------------------------------------------------

Tree Tree::from_edge_list(int m, std::span<const Edge> edges) {
  if (m < 1) throw ValidationError("a tree needs at least one vertex");
  if (static_cast<std::int64_t>(edges.size()) != m - 1) {
    throw ValidationError("expected " + std::to_string(m - 1) + " edges, got " +
                          std::to_string(edges.size()));
  }
  Tree t;
  t.m_ = m;
  t.edges_.reserve(edges.size());
  Dsu dsu(m);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= m || e.v >= m) {
      throw ValidationError("edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            "} has an endpoint outside [0, " + std::to_string(m - 1) + "]");
    }
    if (e.u == e.v) throw ValidationError("self-loop at " + std::to_string(e.u));
    if (!dsu.unite(e.u, e.v)) {
      throw ValidationError("edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            "} closes a cycle or repeats an edge");
    }
    t.edges_.push_back(make_edge(e.u, e.v));
  }
  std::sort(t.edges_.begin(), t.edges_.end());
  t.off_.assign(static_cast<std::size_t>(m) + 1, 0);
  for (const auto& e : t.edges_) {
    ++t.off_[e.u + 1];
    ++t.off_[e.v + 1];
  }
  for (int v = 0; v < m; ++v) t.off_[v + 1] += t.off_[v];
  t.adj_.assign(static_cast<std::size_t>(2 * (m - 1)), 0);
  std::vector<int> fill(t.off_.begin(), t.off_.end() - 1);
  for (const auto& e : t.edges_) {
    t.adj_[fill[e.u]++] = e.v;
    t.adj_[fill[e.v]++] = e.u;
  }
  for (int v = 0; v < m; ++v) std::sort(t.adj_.begin() + t.off_[v], t.adj_.begin() + t.off_[v + 1]);
  return t;
}

Tree Tree::from_pairs(int m, std::span<const std::pair<int, int>> pairs) {
  std::vector<Edge> e;
  e.reserve(pairs.size());
  for (auto [a, b] : pairs) e.push_back({a, b});
  return from_edge_list(m, e);
}

Tree Tree::from_prufer(std::span<const int> seq) {
  const int m = static_cast<int>(seq.size()) + 2;
  std::vector<int> deg(static_cast<std::size_t>(m), 1);
  for (int x : seq) {
    if (x < 0 || x >= m) {
      throw ValidationError("Pruefer entry " + std::to_string(x) + " outside [0, " +
                            std::to_string(m - 1) + "]");
    }
    ++deg[x];
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m - 1));
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int x : seq) {
    edges.push_back({leaf, x});
    if (--deg[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back({leaf, m - 1});
  return from_edge_list(m, edges);
}

bool Tree::adjacent(int u, int v) const {
  auto nb = neighbours(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<int> Tree::to_prufer() const {
  if (m_ < 2) throw PreconditionError("Pruefer code needs at least two vertices");
  std::vector<int> parent(static_cast<std::size_t>(m_), -1);
  // Root at m-1; the decoding convention above always ends with an edge to m-1.
  std::vector<int> stack{m_ - 1};
  parent[m_ - 1] = m_ - 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : neighbours(v)) {
      if (parent[w] < 0) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::vector<int> deg(static_cast<std::size_t>(m_));
  for (int v = 0; v < m_; ++v) deg[v] = degree(v);
  std::vector<int> seq;
  seq.reserve(static_cast<std::size_t>(m_ - 2));
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int i = 0; i < m_ - 2; ++i) {
    int next = parent[leaf];
    seq.push_back(next);
    if (--deg[next] == 1 && next < ptr) {
      leaf = next;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  return seq;
}

std::vector<int> Tree::degree_sequence() const {
  std::vector<int> d(static_cast<std::size_t>(m_));
  for (int v = 0; v < m_; ++v) d[v] = degree(v);
  std::sort(d.rbegin(), d.rend());
  return d;
}

std::vector<int> Tree::leaves() const {
  std::vector<int> out;
  for (int v = 0; v < m_; ++v) {
    if (degree(v) == 1) out.push_back(v);
  }
  return out;
}

Tree parse_tree_text(std::string_view text) {
  auto vals = read_ints(text);
  if (vals.empty()) throw ParseError("empty tree description");
  const std::int64_t m = vals[0];
  if (m < 1 || m > std::numeric_limits<int>::max() / 2) {
    throw ParseError("vertex count " + std::to_string(m) + " out of range");
  }
  if (static_cast<std::int64_t>(vals.size()) != 1 + 2 * (m - 1)) {
    throw ParseError("expected " + std::to_string(m - 1) + " edges after the vertex count");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 1; i + 1 < vals.size(); i += 2) {
    auto a = vals[i], b = vals[i + 1];
    if (a < 0 || b < 0 || a >= m || b >= m) {
      throw ValidationError("edge endpoint out of range: " + std::to_string(a) + " " + std::to_string(b));
    }
    edges.push_back({static_cast<int>(a), static_cast<int>(b)});
  }
  return Tree::from_edge_list(static_cast<int>(m), edges);
}

Tree parse_prufer_text(std::string_view text) {
  auto vals = read_ints(text);
  std::vector<int> seq;
  seq.reserve(vals.size());
  for (auto v : vals) {
    if (v < 0 || v > std::numeric_limits<int>::max()) throw ValidationError("Pruefer entry out of range");
    seq.push_back(static_cast<int>(v));
  }
  return Tree::from_prufer(seq);
}

std::string to_tree_text(const Tree& t) {
  std::ostringstream os;
  os << t.size() << '\n';
  for (const auto& e : t.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

Tree random_tree(int m, std::mt19937_64& rng) {
  if (m < 1) throw ParameterError("tree size must be positive");
  if (m == 1) return Tree::from_edge_list(1, {});
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::vector<int> seq(static_cast<std::size_t>(m - 2));
  for (auto& x : seq) x = pick(rng);
  return Tree::from_prufer(seq);
}

// ---- canonical forms -------------------------------------------------------

namespace {

std::vector<int> centres(const Tree& t) {
  const int m = t.size();
  if (m <= 2) {
    std::vector<int> c(static_cast<std::size_t>(m));
    std::iota(c.begin(), c.end(), 0);
    return c;
  }
  std::vector<int> deg(static_cast<std::size_t>(m));
  std::vector<int> layer;
  for (int v = 0; v < m; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] == 1) layer.push_back(v);
  }
  int remaining = m;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer) {
      for (int w : t.neighbours(v)) {
        if (--deg[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::string rooted_code(const Tree& t, int root) {
  const int m = t.size();
  std::vector<int> parent(static_cast<std::size_t>(m), -1), order;
  order.reserve(static_cast<std::size_t>(m));
  order.push_back(root);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : t.neighbours(order[i])) {
      if (parent[w] < 0) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  std::vector<std::vector<std::string>> kids(static_cast<std::size_t>(m));
  std::string code;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    auto& ks = kids[v];
    std::sort(ks.begin(), ks.end());
    code = "(";
    for (auto& k : ks) code += k;
    code += ")";
    ks.clear();
    ks.shrink_to_fit();
    if (v != root) kids[parent[v]].push_back(code);
  }
  return code;
}

}  // namespace

std::string canonical_form(const Tree& t) {
  if (t.size() == 0) return "";
  auto cs = centres(t);
  std::string best = rooted_code(t, cs[0]);
  if (cs.size() > 1) best = std::min(best, rooted_code(t, cs[1]));
  return best;
}

std::vector<Tree> enumerate_trees(int m) {
  if (m < 1) return {};
  std::vector<std::pair<std::string, Tree>> level{{canonical_form(Tree::from_edge_list(1, {})),
                                                   Tree::from_edge_list(1, {})}};
  for (int size = 2; size <= m; ++size) {
    std::set<std::string> seen;
    std::vector<std::pair<std::string, Tree>> next;
    for (const auto& [code, t] : level) {
      std::vector<Edge> base = t.edges();
      for (int v = 0; v < t.size(); ++v) {
        auto edges = base;
        edges.push_back({v, size - 1});
        Tree grown = Tree::from_edge_list(size, edges);
        auto c = canonical_form(grown);
        if (seen.insert(c).second) next.emplace_back(std::move(c), std::move(grown));
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    level = std::move(next);
  }
  std::vector<Tree> out;
  out.reserve(level.size());
  for (auto& [c, t] : level) out.push_back(std::move(t));
  return out;
}

int centroid(const Tree& t) {
  const int m = t.size();
  if (m <= 1) return 0;
  std::vector<int> parent(static_cast<std::size_t>(m), -1), order{0}, sz(static_cast<std::size_t>(m), 1);
  parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : t.neighbours(order[i])) {
      if (parent[w] < 0) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != 0) sz[parent[*it]] += sz[*it];
  }
  int best = 0, best_val = m;
  for (int v = 0; v < m; ++v) {
    int worst = m - sz[v];
    for (int w : t.neighbours(v)) {
      if (w != parent[v] || v == 0) {
        if (parent[w] == v) worst = std::max(worst, sz[w]);
      }
    }
    if (worst < best_val) {
      best_val = worst;
      best = v;
    }
  }
  return best;
}

// ---- leaves or bare paths ----------------------------------------------------

std::vector<std::vector<int>> pack_bare_paths(const Tree& t, int k) {
  if (k < 1) throw ParameterError("bare path length must be positive");
  const int m = t.size();
  std::vector<std::vector<int>> out;
  if (m < 2) return out;
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  for (int s = 0; s < m; ++s) {
    if (t.degree(s) == 2) continue;
    for (int first : t.neighbours(s)) {
      // Walk the maximal chain s, first, ..., e through degree-2 vertices.
      std::vector<int> chain{s};
      int prev = s, cur = first;
      while (t.degree(cur) == 2) {
        chain.push_back(cur);
        auto nb = t.neighbours(cur);
        int nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
      }
      chain.push_back(cur);
      if (cur < s) continue;  // each chain is walked from its smaller end
      if (cur == s) continue;
      const int len = static_cast<int>(chain.size()) - 1;
      int p = 0;
      while (p + k <= len) {
        if (used[chain[p]] || used[chain[p + k]]) {
          ++p;
          continue;
        }
        std::vector<int> path(chain.begin() + p, chain.begin() + p + k + 1);
        for (int v : path) used[v] = 1;
        out.push_back(std::move(path));
        p += k + 1;
      }
    }
  }
  return out;
}

LeavesOrPaths leaves_or_bare_paths(const Tree& t, int k) {
  if (k < 3) throw PreconditionError("path length k must be at least 3");
  const std::int64_t n = t.size();
  if (n < 4LL * k) {
    throw PreconditionError("tree has " + std::to_string(n) + " vertices, fewer than 4k = " +
                            std::to_string(4LL * k));
  }
  LeavesOrPaths r;
  r.threshold = ceil_div(n, 4LL * k);
  auto leaves = t.leaves();
  if (static_cast<std::int64_t>(leaves.size()) >= r.threshold) {
    r.has_leaves = true;
    r.leaves = std::move(leaves);
    return r;
  }
  auto paths = pack_bare_paths(t, k);
  if (static_cast<std::int64_t>(paths.size()) >= r.threshold) {
    r.paths = std::move(paths);
    return r;
  }
  throw GuaranteeViolation("found " + std::to_string(leaves.size()) + " leaves and " +
                           std::to_string(paths.size()) + " bare paths, need " +
                           std::to_string(r.threshold));
}

// ---- dividing into pieces ----------------------------------------------------

namespace {

Subtree induced(const Tree& t, std::vector<int> verts, const std::vector<char>& in) {
  std::sort(verts.begin(), verts.end());
  Subtree s;
  for (int v : verts) {
    for (int w : t.neighbours(v)) {
      if (w > v && in[w]) s.edges.push_back({v, w});
    }
  }
  s.vertices = std::move(verts);
  return s;
}

}  // namespace

std::pair<Subtree, Subtree> split_off_piece(const Tree& t, std::span<const int> vertices, int root,
                                            int m) {
  const int total = static_cast<int>(vertices.size());
  if (m < 1 || 3LL * m > total) {
    throw PreconditionError("piece size " + std::to_string(m) + " needs at least 3m vertices, have " +
                            std::to_string(total));
  }
  std::vector<char> in(static_cast<std::size_t>(t.size()), 0);
  for (int v : vertices) in[v] = 1;
  if (!in[root]) throw PreconditionError("root is not in the subtree");
  std::vector<int> parent(static_cast<std::size_t>(t.size()), -1), order{root};
  std::vector<int> sz(static_cast<std::size_t>(t.size()), 0);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : t.neighbours(order[i])) {
      if (in[w] && parent[w] < 0) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  if (static_cast<int>(order.size()) != total) throw PreconditionError("vertex set is not connected");
  int pivot = -1;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    sz[v] += 1;
    if (v != root) sz[parent[v]] += sz[v];
    if (pivot < 0 && sz[v] >= m) pivot = v;
  }
  // Children of the pivot all have fewer than m vertices.
  std::vector<int> kids;
  for (int w : t.neighbours(pivot)) {
    if (in[w] && parent[w] == pivot && w != pivot) kids.push_back(w);
  }
  std::vector<int> piece{pivot};
  std::vector<char> taken(static_cast<std::size_t>(t.size()), 0);
  int count = 1;
  for (int c : kids) {
    if (count >= m) break;
    std::vector<int> stack{c};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      taken[v] = 1;
      piece.push_back(v);
      for (int w : t.neighbours(v)) {
        if (in[w] && parent[w] == v) stack.push_back(w);
      }
    }
    count += sz[c];
  }
  std::vector<int> rest;
  for (int v : vertices) {
    if (!taken[v]) rest.push_back(v);
  }
  std::vector<char> in_piece(static_cast<std::size_t>(t.size()), 0), in_rest(in_piece);
  for (int v : piece) in_piece[v] = 1;
  for (int v : rest) in_rest[v] = 1;
  return {induced(t, std::move(piece), in_piece), induced(t, std::move(rest), in_rest)};
}

std::vector<Subtree> divide_tree(const Tree& t, int m) {
  if (m < 1) throw ParameterError("piece size must be positive");
  if (t.size() < m) {
    throw PreconditionError("tree has fewer than m = " + std::to_string(m) + " vertices");
  }
  std::vector<int> current(static_cast<std::size_t>(t.size()));
  std::iota(current.begin(), current.end(), 0);
  std::vector<Subtree> out;
  while (static_cast<std::int64_t>(current.size()) > 4LL * m) {
    auto [piece, rest] = split_off_piece(t, current, 0, m);
    out.push_back(std::move(piece));
    current = std::move(rest.vertices);
  }
  std::vector<char> in(static_cast<std::size_t>(t.size()), 0);
  for (int v : current) in[v] = 1;
  out.push_back(induced(t, std::move(current), in));
  return out;
}

// ---- case division -----------------------------------------------------------

Rational Rational::parse(std::string_view s) {
  auto bad = [&] { return ParameterError("cannot parse '" + std::string(s) + "' as a positive rational"); };
  while (!s.empty() && (s.front() == ' ')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\n')) s.remove_suffix(1);
  if (s.empty()) throw bad();
  Rational r;
  auto slash = s.find('/');
  auto parse_u = [&](std::string_view p) {
    std::int64_t v = 0;
    auto [q, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (ec != std::errc() || q != p.data() + p.size() || p.empty() || v < 0) throw bad();
    return v;
  };
  if (slash != std::string_view::npos) {
    r.num = parse_u(s.substr(0, slash));
    r.den = parse_u(s.substr(slash + 1));
  } else {
    auto dot = s.find('.');
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (fp.size() > 6) throw ParameterError("at most six decimal places are supported");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    std::int64_t iv = ip.empty() ? 0 : parse_u(ip);
    std::int64_t fv = fp.empty() ? 0 : parse_u(fp);
    if (ip.empty() && fp.empty()) throw bad();
    if (iv > 1'000'000) throw bad();
    r.num = iv * scale + fv;
    r.den = scale;
  }
  if (r.den <= 0 || r.num <= 0) throw bad();
  auto g = std::gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  if (r.den > 1'000'000) throw ParameterError("denominator above 10^6 is not supported");
  return r;
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

std::string to_string(TreeCase c) {
  switch (c) {
    case TreeCase::A: return "A";
    case TreeCase::B: return "B";
    case TreeCase::C: return "C";
  }
  return "?";
}

CaseThresholds case_thresholds(std::int64_t n, const Rational& delta) {
  if (delta.num <= 0 || delta.den <= 0 || 20 * delta.num > delta.den) {
    throw ParameterError("delta must lie in (0, 1/20], got " + delta.str());
  }
  if (n < 2) throw PreconditionError("case division needs at least two vertices");
  CaseThresholds th;
  th.n = n;
  th.cluster_leaves = ceil_div(pow128(delta.den, 4), pow128(delta.num, 4));
  th.pruned_max = n / 100;
  th.path_length = ceil_div(delta.den, delta.num);
  th.path_count = ceil_div(static_cast<i128>(delta.num) * n, static_cast<i128>(800) * delta.den);
  th.leaf_count = std::max<std::int64_t>(
      1, ceil_div(pow128(delta.num, 6) * n, pow128(delta.den, 6)));
  return th;
}

Pruned prune_leaf_clusters(const Tree& t, std::int64_t cluster) {
  const int m = t.size();
  std::vector<int> leafcount(static_cast<std::size_t>(m), 0);
  for (int v = 0; v < m; ++v) {
    if (t.degree(v) == 1) ++leafcount[t.neighbours(v)[0]];
  }
  Pruned p;
  std::vector<char> centre(static_cast<std::size_t>(m), 0);
  for (int v = 0; v < m; ++v) {
    if (leafcount[v] >= cluster && t.degree(v) >= 2) {
      centre[v] = 1;
      p.centres.push_back(v);
      p.leaf_counts.push_back(leafcount[v]);
    }
  }
  for (int v = 0; v < m; ++v) {
    if (t.degree(v) == 1 && centre[t.neighbours(v)[0]]) continue;
    p.kept.push_back(v);
  }
  return p;
}

namespace {

std::vector<int> spread_leaves(const Tree& t) {
  std::vector<char> claimed(static_cast<std::size_t>(t.size()), 0), chosen(claimed);
  std::vector<int> out;
  for (int v = 0; v < t.size(); ++v) {
    if (t.degree(v) != 1) continue;
    int p = t.neighbours(v)[0];
    if (claimed[p] || chosen[p]) continue;
    claimed[p] = 1;
    chosen[v] = 1;
    out.push_back(v);
  }
  return out;
}

}  // namespace

CaseWitness classify_case(const Tree& t, const Rational& delta) {
  CaseWitness w;
  w.delta = delta;
  w.thresholds = case_thresholds(t.size(), delta);
  const auto& th = w.thresholds;
  auto pr = prune_leaf_clusters(t, th.cluster_leaves);
  if (static_cast<std::int64_t>(pr.kept.size()) <= th.pruned_max) {
    w.which = TreeCase::C;
    w.pruned_vertices = std::move(pr.kept);
    w.centres = std::move(pr.centres);
    w.centre_leaf_counts = std::move(pr.leaf_counts);
    return w;
  }
  if (th.path_length <= t.size()) {
    auto paths = pack_bare_paths(t, static_cast<int>(th.path_length));
    if (static_cast<std::int64_t>(paths.size()) >= th.path_count) {
      w.which = TreeCase::B;
      w.paths = std::move(paths);
      return w;
    }
  }
  auto leaves = spread_leaves(t);
  if (static_cast<std::int64_t>(leaves.size()) >= th.leaf_count) {
    w.which = TreeCase::A;
    w.leaves = std::move(leaves);
    return w;
  }
  throw GuaranteeViolation("no case applies: pruned size " + std::to_string(pr.kept.size()) +
                           ", spread leaves " + std::to_string(leaves.size()));
}

Check check_witness(const Tree& t, const CaseWitness& w) {
  CaseThresholds th;
  try {
    th = case_thresholds(t.size(), w.delta);
  } catch (const Error& e) {
    return Check::fail(e.what());
  }
  const int m = t.size();
  auto in_range = [&](int v) { return v >= 0 && v < m; };
  switch (w.which) {
    case TreeCase::A: {
      if (static_cast<std::int64_t>(w.leaves.size()) < th.leaf_count) return Check::fail("too few leaves");
      std::vector<char> seen(static_cast<std::size_t>(m), 0), par(seen);
      for (int v : w.leaves) {
        if (!in_range(v) || t.degree(v) != 1) return Check::fail("vertex " + std::to_string(v) + " is not a leaf");
        if (seen[v]) return Check::fail("repeated leaf " + std::to_string(v));
        seen[v] = 1;
        int p = t.neighbours(v)[0];
        if (par[p]) return Check::fail("two leaves share neighbour " + std::to_string(p));
        par[p] = 1;
      }
      for (int v : w.leaves) {
        if (seen[t.neighbours(v)[0]]) return Check::fail("adjacent leaves");
      }
      return {};
    }
    case TreeCase::B: {
      if (static_cast<std::int64_t>(w.paths.size()) < th.path_count) return Check::fail("too few bare paths");
      std::vector<char> seen(static_cast<std::size_t>(m), 0);
      for (const auto& p : w.paths) {
        if (static_cast<std::int64_t>(p.size()) - 1 < th.path_length) return Check::fail("bare path too short");
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (!in_range(p[i])) return Check::fail("path vertex out of range");
          if (seen[p[i]]) return Check::fail("paths share vertex " + std::to_string(p[i]));
          seen[p[i]] = 1;
          if (i > 0 && !t.adjacent(p[i - 1], p[i])) return Check::fail("path is not a path");
          if (i > 0 && i + 1 < p.size() && t.degree(p[i]) != 2) {
            return Check::fail("interior vertex " + std::to_string(p[i]) + " has degree != 2");
          }
        }
      }
      return {};
    }
    case TreeCase::C: {
      auto pr = prune_leaf_clusters(t, th.cluster_leaves);
      if (pr.kept != w.pruned_vertices) return Check::fail("pruned vertex set differs");
      if (pr.centres != w.centres || pr.leaf_counts != w.centre_leaf_counts) {
        return Check::fail("centres differ");
      }
      if (static_cast<std::int64_t>(pr.kept.size()) > th.pruned_max) return Check::fail("pruned tree too large");
      return {};
    }
  }
  return Check::fail("unknown case");
}

// ---- five layers ---------------------------------------------------------------

std::int64_t layer_budget(int d) {
  std::int64_t r = 1;
  for (int i = 0; i < 8; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / std::max(d, 1)) return std::numeric_limits<std::int64_t>::max();
    r *= d;
  }
  return r;
}

std::vector<Edge> LayerDecomposition::forest_edges(int level) const {
  if (level < 1 || level > 5) throw ParameterError("forest level must be in 1..5");
  std::vector<Edge> out = small_edges;
  if (level >= 2) {
    for (const auto& s : stars) {
      for (int l : s.leaves) out.push_back(make_edge(s.centre, l));
    }
  }
  if (level >= 3) {
    for (const auto& mt : inner_matchings) {
      for (auto a : mt) out.push_back(make_edge(a.parent, a.leaf));
    }
  }
  if (level >= 4) {
    for (const auto& p : paths) {
      out.push_back(make_edge(p[0], p[1]));
      out.push_back(make_edge(p[1], p[2]));
      out.push_back(make_edge(p[2], p[3]));
    }
  }
  if (level >= 5) {
    for (const auto& mt : outer_matchings) {
      for (auto a : mt) out.push_back(make_edge(a.parent, a.leaf));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> LayerDecomposition::forest_vertices(int level) const {
  if (level < 1 || level > 5) throw ParameterError("forest level must be in 1..5");
  std::vector<int> out = small_vertices;
  if (level >= 2) {
    for (const auto& s : stars) out.insert(out.end(), s.leaves.begin(), s.leaves.end());
  }
  if (level >= 3) {
    for (const auto& mt : inner_matchings) {
      for (auto a : mt) out.push_back(a.leaf);
    }
  }
  if (level >= 4) {
    for (const auto& p : paths) {
      out.push_back(p[1]);
      out.push_back(p[2]);
    }
  }
  if (level >= 5) {
    for (const auto& mt : outer_matchings) {
      for (auto a : mt) out.push_back(a.leaf);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Forest being peeled down from T; removed vertices are recorded per phase.
class Peeler {
 public:
  Peeler(const Tree& t, std::span<const int> u, std::int64_t u_floor)
      : t_(t), alive_(static_cast<std::size_t>(t.size()), 1), deg_(static_cast<std::size_t>(t.size())),
        in_u_(static_cast<std::size_t>(t.size()), 0), u_floor_(u_floor) {
    for (int v = 0; v < t.size(); ++v) deg_[v] = t.degree(v);
    for (int v : u) in_u_[v] = 1;
    u_alive_ = static_cast<std::int64_t>(u.size());
    alive_count_ = t.size();
  }

  int parent_of(int leaf) const {
    for (int w : t_.neighbours(leaf)) {
      if (alive_[w]) return w;
    }
    return -1;
  }

  std::vector<int> leaf_children_count() const {
    std::vector<int> cnt(alive_.size(), 0);
    for (int v = 0; v < t_.size(); ++v) {
      if (alive_[v] && deg_[v] == 1) ++cnt[parent_of(v)];
    }
    return cnt;
  }

  bool may_remove(int v, std::int64_t pending_u) const {
    return !in_u_[v] || u_alive_ - pending_u - 1 >= u_floor_;
  }

  void remove(int v) {
    alive_[v] = 0;
    --alive_count_;
    if (in_u_[v]) --u_alive_;
    for (int w : t_.neighbours(v)) {
      if (alive_[w]) --deg_[w];
    }
  }

  // One round of light-leaf peeling; leaves attached to vertices with at
  // least d leaves are held back for the star layer.
  std::vector<LeafAttach> peel_round(int d) {
    auto cnt = leaf_children_count();
    std::vector<char> claimed(alive_.size(), 0);
    std::vector<LeafAttach> out;
    std::int64_t pending_u = 0;
    for (int v = 0; v < t_.size(); ++v) {
      if (!alive_[v] || deg_[v] != 1 || claimed[v]) continue;
      int p = parent_of(v);
      if (claimed[p] || cnt[p] >= d) continue;
      if (!may_remove(v, pending_u)) continue;
      claimed[p] = 1;
      claimed[v] = 1;
      if (in_u_[v]) ++pending_u;
      out.push_back({p, v});
    }
    for (auto a : out) remove(a.leaf);
    return out;
  }

  std::vector<std::array<int, 4>> cut_paths(std::int64_t limit) {
    std::vector<std::array<int, 4>> out;
    std::vector<char> used(alive_.size(), 0);
    std::int64_t pending_u = 0;
    for (int s = 0; s < t_.size() && static_cast<std::int64_t>(out.size()) < limit; ++s) {
      if (!alive_[s] || deg_[s] == 2) continue;
      for (int first : t_.neighbours(s)) {
        if (!alive_[first]) continue;
        std::vector<int> chain{s};
        int prev = s, cur = first;
        while (deg_[cur] == 2) {
          chain.push_back(cur);
          int nxt = -1;
          for (int w : t_.neighbours(cur)) {
            if (alive_[w] && w != prev) nxt = w;
          }
          prev = cur;
          cur = nxt;
        }
        chain.push_back(cur);
        if (cur <= s) continue;
        const int len = static_cast<int>(chain.size()) - 1;
        int p = 0;
        while (p + 3 <= len && static_cast<std::int64_t>(out.size()) < limit) {
          int x = chain[p], a = chain[p + 1], b = chain[p + 2], y = chain[p + 3];
          std::int64_t du = in_u_[a] + in_u_[b];
          if (used[x] || used[y] || u_alive_ - pending_u - du < u_floor_) {
            ++p;
            continue;
          }
          for (int v : {x, a, b, y}) used[v] = 1;
          pending_u += du;
          out.push_back({x, a, b, y});
          p += 4;
        }
      }
    }
    for (const auto& p : out) {
      remove(p[1]);
      remove(p[2]);
    }
    return out;
  }

  std::vector<Star> cut_stars(int d) {
    auto cnt = leaf_children_count();
    std::vector<Star> out;
    std::int64_t pending_u = 0;
    for (int v = 0; v < t_.size(); ++v) {
      if (!alive_[v] || cnt[v] < d || deg_[v] == 1) continue;
      Star s{v, {}};
      for (int w : t_.neighbours(v)) {
        if (alive_[w] && deg_[w] == 1 && may_remove(w, pending_u)) {
          s.leaves.push_back(w);
          if (in_u_[w]) ++pending_u;
        }
      }
      if (static_cast<int>(s.leaves.size()) < d) {
        for (int w : s.leaves) pending_u -= in_u_[w];
        continue;
      }
      out.push_back(std::move(s));
    }
    for (const auto& s : out) {
      for (int w : s.leaves) remove(w);
    }
    return out;
  }

  std::int64_t alive_count() const { return alive_count_; }
  std::int64_t u_alive() const { return u_alive_; }
  bool alive(int v) const { return alive_[v] != 0; }

 private:
  const Tree& t_;
  std::vector<char> alive_;
  std::vector<int> deg_;
  std::vector<char> in_u_;
  std::int64_t u_floor_;
  std::int64_t u_alive_ = 0;
  std::int64_t alive_count_ = 0;
};

std::int64_t ceil_pow_div(std::int64_t n, int d, int e) {
  i128 p = pow128(d, e);
  return ceil_div(n, p);
}

}  // namespace

LayerDecomposition split_layers(const Tree& t, int d, std::span<const int> u) {
  if (d < 2) throw ParameterError("layer parameter d must be at least 2");
  const std::int64_t n = t.size();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : u) {
    if (v < 0 || v >= n) throw ParameterError("vertex of U out of range");
    if (seen[v]) throw ParameterError("repeated vertex in U");
    seen[v] = 1;
  }
  const std::int64_t need_u = ceil_pow_div(n, d, 3);
  if (static_cast<std::int64_t>(u.size()) < need_u) {
    throw PreconditionError("|U| = " + std::to_string(u.size()) + " is below n/d^3 = " + std::to_string(need_u));
  }
  const std::int64_t u_floor = ceil_pow_div(n, d, 6);
  const std::int64_t budget = layer_budget(d);
  Peeler pl(t, u, u_floor);
  LayerDecomposition dec;
  dec.d = d;
  dec.n = n;

  for (std::int64_t r = 0; r < budget; ++r) {
    auto round = pl.peel_round(d);
    if (round.empty()) break;
    dec.outer_matchings.push_back(std::move(round));
  }
  dec.paths = pl.cut_paths(n / d);
  std::int64_t inner_rounds = 0;
  while (true) {
    auto round = pl.peel_round(d);
    if (round.empty()) break;
    if (++inner_rounds > budget) {
      throw DecompositionFailure("leaf peeling did not stabilise within d^8 rounds");
    }
    dec.inner_matchings.push_back(std::move(round));
  }
  dec.stars = pl.cut_stars(d);

  if (pl.alive_count() > n / d) {
    throw DecompositionFailure("core forest keeps " + std::to_string(pl.alive_count()) +
                               " vertices, above n/d = " + std::to_string(n / d));
  }
  if (pl.u_alive() < u_floor) throw InternalInvariantError("U dropped below n/d^6 in the core");

  for (int v = 0; v < n; ++v) {
    if (pl.alive(v)) dec.small_vertices.push_back(v);
  }
  for (const auto& e : t.edges()) {
    if (pl.alive(e.u) && pl.alive(e.v)) dec.small_edges.push_back(e);
  }
  // Layers were collected outermost-first; store them in build order.
  std::reverse(dec.outer_matchings.begin(), dec.outer_matchings.end());
  std::reverse(dec.inner_matchings.begin(), dec.inner_matchings.end());
  return dec;
}

Check check_layers(const Tree& t, const LayerDecomposition& dec, std::span<const int> u) {
  const int m = t.size();
  const std::int64_t n = m;
  const int d = dec.d;
  if (d < 2) return Check::fail("d below 2");
  std::vector<char> present(static_cast<std::size_t>(m), 0);
  Dsu comp(m);
  auto add_vertex = [&](int v) -> bool {
    if (v < 0 || v >= m || present[v]) return false;
    present[v] = 1;
    return true;
  };
  for (int v : dec.small_vertices) {
    if (!add_vertex(v)) return Check::fail("bad core vertex " + std::to_string(v));
  }
  if (static_cast<std::int64_t>(dec.small_vertices.size()) > n / d) return Check::fail("core above n/d");
  std::int64_t u_core = 0;
  for (int v : u) {
    if (v >= 0 && v < m && present[v]) ++u_core;
  }
  if (u_core < ceil_pow_div(n, d, 6)) return Check::fail("core holds fewer than n/d^6 vertices of U");
  for (const auto& e : dec.small_edges) {
    if (e.u < 0 || e.v >= m || !present[e.u] || !present[e.v]) return Check::fail("core edge leaves the core");
    if (!comp.unite(e.u, e.v)) return Check::fail("core has a cycle");
  }
  std::vector<char> centre_used(static_cast<std::size_t>(m), 0);
  for (const auto& s : dec.stars) {
    if (s.centre < 0 || s.centre >= m || !present[s.centre]) return Check::fail("star centre not in core");
    if (centre_used[s.centre]) return Check::fail("repeated star centre");
    centre_used[s.centre] = 1;
    if (static_cast<int>(s.leaves.size()) < d) return Check::fail("star with fewer than d leaves");
  }
  for (const auto& s : dec.stars) {
    for (int l : s.leaves) {
      if (!add_vertex(l)) return Check::fail("star leaf reused");
      comp.unite(s.centre, l);
    }
  }
  auto check_matchings = [&](const std::vector<std::vector<LeafAttach>>& ms) -> Check {
    if (static_cast<std::int64_t>(ms.size()) > layer_budget(d)) return Check::fail("more than d^8 matchings");
    for (const auto& mt : ms) {
      std::vector<int> parents;
      for (auto a : mt) {
        if (a.parent < 0 || a.parent >= m || !present[a.parent]) return Check::fail("matching parent missing");
        parents.push_back(a.parent);
      }
      std::sort(parents.begin(), parents.end());
      if (std::adjacent_find(parents.begin(), parents.end()) != parents.end()) {
        return Check::fail("matching shares a parent");
      }
      for (auto a : mt) {
        if (!add_vertex(a.leaf)) return Check::fail("matching leaf reused");
        comp.unite(a.parent, a.leaf);
      }
    }
    return {};
  };
  if (auto c = check_matchings(dec.inner_matchings); !c) return c;
  if (static_cast<std::int64_t>(dec.paths.size()) > n / d) return Check::fail("more than n/d paths");
  std::vector<char> endpoint(static_cast<std::size_t>(m), 0);
  for (const auto& p : dec.paths) {
    for (int i : {0, 3}) {
      if (p[i] < 0 || p[i] >= m || !present[p[i]]) return Check::fail("path endpoint missing");
      if (endpoint[p[i]]) return Check::fail("paths share an endpoint");
      endpoint[p[i]] = 1;
    }
  }
  for (const auto& p : dec.paths) {
    if (comp.find(p[0]) == comp.find(p[3])) return Check::fail("path closes a cycle");
    comp.unite(p[0], p[3]);
    if (!add_vertex(p[1]) || !add_vertex(p[2])) return Check::fail("path interior reused");
  }
  if (auto c = check_matchings(dec.outer_matchings); !c) return c;
  for (int v = 0; v < m; ++v) {
    if (!present[v]) return Check::fail("vertex " + std::to_string(v) + " missing from T5");
  }
  if (dec.forest_edges(5) != t.edges()) return Check::fail("edge sets differ from the tree");
  return {};
}

}  // namespace ringel
