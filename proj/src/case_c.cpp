#include "ringel/case_c.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ringel/error.hpp"

namespace ringel {

namespace {

std::int64_t frac_floor(std::int64_t n, std::int64_t p, std::int64_t q) { return n * p / q; }
std::int64_t frac_ceil(std::int64_t n, std::int64_t p, std::int64_t q) { return (n * p + q - 1) / q; }

std::vector<int> bfs_order(const Tree& t, int root, const std::vector<char>* keep, std::vector<int>& parent) {
  parent.assign(static_cast<std::size_t>(t.size()), -1);
  std::vector<int> order{root};
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : t.neighbours(order[i])) {
      if (parent[w] >= 0) continue;
      if (keep && !(*keep)[w]) continue;
      parent[w] = order[i];
      order.push_back(w);
    }
  }
  return order;
}

std::vector<int> leaf_neighbour_counts(const Tree& t) {
  std::vector<int> cnt(static_cast<std::size_t>(t.size()), 0);
  for (int v = 0; v < t.size(); ++v) {
    if (t.degree(v) == 1) ++cnt[t.neighbours(v)[0]];
  }
  return cnt;
}

}  // namespace

LogParams log_params(std::int64_t n, const CaseCConfig& cfg) {
  if (n < 2) throw ParameterError("n must be at least 2");
  LogParams p;
  p.log_value = cfg.log_value.value_or(std::log(static_cast<double>(n)));
  if (!(p.log_value > 0)) throw ParameterError("log value must be positive");
  p.L = static_cast<std::int64_t>(std::ceil(p.log_value));
  std::int64_t f = static_cast<std::int64_t>(std::floor(2 * p.log_value));
  p.k = (f % 2 == 1) ? f : f - 1;
  if (p.k < 1) throw ParameterError("block parameter k must be at least 1; log value too small");
  p.gap = 16 * p.L * p.L * p.L;
  p.d_min = cfg.d_min.value_or(p.L * p.L * p.L * p.L);
  return p;
}

int colour_class(std::int64_t c, std::int64_t k) {
  if (c % 2 == 1) return 0;
  std::int64_t r = c % (2 * k + 1);
  if (r == 0) return -1;
  return static_cast<int>(r);
}

PlanReport validate_plan(const Tree& t, const IntervalPlan& plan, const CaseCConfig& cfg) {
  const std::int64_t n = plan.n;
  PlanReport rep;
  rep.params = log_params(n, cfg);
  const std::int64_t m = t.size();
  if (100 * m > n) throw ParameterError("tree has more than n/100 vertices");
  std::vector<char> cls(static_cast<std::size_t>(m), 0);
  for (int p = 1; p <= 2; ++p) {
    for (int v : p == 1 ? plan.v1 : plan.v2) {
      if (v < 0 || v >= m) throw ParameterError("interval class vertex out of range");
      if (cls[v]) throw ParameterError("vertex " + std::to_string(v) + " assigned twice");
      cls[v] = static_cast<char>(p);
    }
  }
  const Interval* iv[3] = {&plan.i0, &plan.i1, &plan.i2};
  const std::int64_t counts[3] = {m - static_cast<std::int64_t>(plan.v1.size() + plan.v2.size()),
                                  static_cast<std::int64_t>(plan.v1.size()),
                                  static_cast<std::int64_t>(plan.v2.size())};
  for (int i = 0; i < 3; ++i) {
    if (iv[i]->size() == 0) {
      if (counts[i] > 0) throw ParameterError("interval I" + std::to_string(i) + " is empty");
      continue;
    }
    if (iv[i]->lo < 0 || iv[i]->hi > 2 * n) throw ParameterError("interval I" + std::to_string(i) + " outside Z_{2n+1}");
    for (int j = 0; j < i; ++j) {
      if (iv[j]->size() == 0) continue;
      if (iv[i]->lo <= iv[j]->hi && iv[j]->lo <= iv[i]->hi) {
        throw ParameterError("intervals I" + std::to_string(j) + " and I" + std::to_string(i) + " overlap");
      }
    }
  }
  if (plan.i0.size() < 7 * counts[0]) throw ParameterError("|I0| < 7|V0|");
  const std::int64_t k3 = rep.params.k * rep.params.k * rep.params.k;
  const std::int64_t L3 = rep.params.L * rep.params.L * rep.params.L;
  rep.meets_size_hypothesis = true;
  for (int p = 1; p <= 2; ++p) {
    if (iv[p]->size() < counts[p] * k3) {
      throw ParameterError("I" + std::to_string(p) + " holds fewer than |V" + std::to_string(p) +
                           "| subintervals of length k^3 = " + std::to_string(k3));
    }
    if (iv[p]->size() < 8 * counts[p] * L3) rep.meets_size_hypothesis = false;
  }
  return rep;
}

SmallTreeResult embed_small_tree_intervals(const Tree& t, const IntervalPlan& plan, const CaseCConfig& cfg) {
  SmallTreeResult res;
  res.plan = validate_plan(t, plan, cfg);
  res.params = res.plan.params;
  const std::int64_t n = plan.n, k = res.params.k, k3 = k * k * k, M = 2 * n + 1;
  const int m = t.size();
  NDColouring nd(n);
  std::vector<char> cls(static_cast<std::size_t>(m), 0);
  for (int v : plan.v1) cls[v] = 1;
  for (int v : plan.v2) cls[v] = 2;
  const Interval* ip[3] = {&plan.i0, &plan.i1, &plan.i2};
  const std::int64_t vp[3] = {0, static_cast<std::int64_t>(plan.v1.size()),
                              static_cast<std::int64_t>(plan.v2.size())};
  std::vector<char> sub_free[3];
  std::int64_t free_count[3] = {0, vp[1], vp[2]};
  for (int p = 1; p <= 2; ++p) sub_free[p].assign(static_cast<std::size_t>(vp[p]), 1);
  std::vector<char> used_v(static_cast<std::size_t>(M), 0), used_c(static_cast<std::size_t>(n) + 1, 0);

  std::vector<int> parent;
  res.order = bfs_order(t, 0, nullptr, parent);
  res.embedding.n = n;
  res.embedding.image.assign(static_cast<std::size_t>(m), -1);
  res.subinterval.assign(static_cast<std::size_t>(m), -1);
  res.class_index.assign(static_cast<std::size_t>(m), 0);

  auto place = [&](int v, std::int64_t x, int p) {
    res.embedding.image[v] = x;
    used_v[x] = 1;
    if (p > 0) {
      std::int64_t j = (x - ip[p]->lo) / k3;
      sub_free[p][j] = 0;
      --free_count[p];
      res.subinterval[v] = static_cast<int>(j);
    }
  };

  for (std::size_t step = 0; step < res.order.size(); ++step) {
    const int v = res.order[step];
    const int p = cls[v];
    if (step == 0) {
      place(v, ip[p]->lo, p);
      continue;
    }
    const std::int64_t a = res.embedding.image[parent[v]];
    if (p == 0) {
      bool done = false;
      for (std::int64_t x = plan.i0.lo; x <= plan.i0.hi && !done; ++x) {
        if (used_v[x] || x == a) continue;
        Colour c = nd.colour(a, x);
        if (c % 2 == 1 && !used_c[c]) {
          place(v, x, 0);
          used_c[c] = 1;
          done = true;
        }
      }
      if (!done) {
        throw EmbeddingFailure("small-tree", static_cast<std::int64_t>(step),
                               "no free vertex of I0 with a free odd colour");
      }
      continue;
    }
    bool done = false;
    for (std::int64_t s = 1; s <= k && !done; ++s) {
      const std::int64_t r = p == 1 ? s : s + k;
      std::int64_t first = r % 2 == 0 ? r : r + 2 * k + 1;
      std::int64_t best_j = -1, best_x = -1;
      Colour best_c = 0;
      for (Colour c = first; c <= n; c += 2 * (2 * k + 1)) {
        if (used_c[c]) continue;
        for (std::int64_t x : nd.neighbours(a, c)) {
          if (!ip[p]->contains(x) || used_v[x]) continue;
          std::int64_t j = (x - ip[p]->lo) / k3;
          if (j >= vp[p] || !sub_free[p][j]) continue;
          if (best_j < 0 || j < best_j || (j == best_j && x < best_x)) {
            best_j = j;
            best_x = x;
            best_c = c;
          }
        }
      }
      if (best_j < 0) continue;
      if (s >= 2 && free_count[p] * (std::int64_t{1} << std::min<std::int64_t>(s - 1, 62)) >= vp[p]) {
        res.claim_holds = false;
      }
      if (s == k) res.top_class_unused = false;
      place(v, best_x, p);
      used_c[best_c] = 1;
      res.class_index[v] = static_cast<int>(s);
      done = true;
    }
    if (!done) {
      throw EmbeddingFailure("small-tree", static_cast<std::int64_t>(step),
                             "no free subinterval of I" + std::to_string(p) + " reachable by a free colour");
    }
  }
  for (int p = 1; p <= 2; ++p) {
    std::vector<std::int64_t> imgs;
    for (int v = 0; v < m; ++v) {
      if (cls[v] == p) imgs.push_back(res.embedding.image[v]);
    }
    std::sort(imgs.begin(), imgs.end());
    for (std::size_t i = 1; i < imgs.size(); ++i) res.max_gap = std::max(res.max_gap, imgs[i] - imgs[i - 1]);
  }
  return res;
}

Embedding embed_one_large_vertex(const Tree& t, std::int64_t n) {
  if (t.size() != n + 1) {
    throw PreconditionError("tree has " + std::to_string(t.size()) + " vertices, expected n+1 = " +
                            std::to_string(n + 1));
  }
  if (n < 1) throw PreconditionError("n must be positive");
  auto cnt = leaf_neighbour_counts(t);
  int v1 = static_cast<int>(std::max_element(cnt.begin(), cnt.end()) - cnt.begin());
  if (3LL * cnt[v1] < 2 * n) {
    throw PreconditionError("no vertex is adjacent to at least 2n/3 leaves (best has " +
                            std::to_string(cnt[v1]) + ")");
  }
  NDColouring nd(n);
  const std::int64_t M = nd.order();
  std::vector<char> keep(static_cast<std::size_t>(t.size()), 1);
  std::vector<int> leaves;
  for (int w : t.neighbours(v1)) {
    if (t.degree(w) == 1) {
      keep[w] = 0;
      leaves.push_back(w);
    }
  }
  Embedding e{n, std::vector<Vertex>(static_cast<std::size_t>(t.size()), -1)};
  std::vector<char> used_v(static_cast<std::size_t>(M), 0), used_c(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> parent;
  auto order = bfs_order(t, v1, &keep, parent);
  e.image[v1] = 1;
  used_v[1] = 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    int v = order[i];
    Vertex a = e.image[parent[v]];
    bool done = false;
    for (Vertex x = 1; x <= n && !done; ++x) {
      if (used_v[x]) continue;
      Colour c = nd.colour(a, x);
      if (used_c[c]) continue;
      e.image[v] = x;
      used_v[x] = 1;
      used_c[c] = 1;
      done = true;
    }
    if (!done) throw InternalInvariantError("greedy core embedding ran out of vertices in [n]");
  }
  std::size_t li = 0;
  for (Colour c = 1; c <= n; ++c) {
    if (used_c[c]) continue;
    if (li >= leaves.size()) throw InternalInvariantError("more unused colours than leaves");
    e.image[leaves[li++]] = mod(2 * n + 2 - c, M);
  }
  if (li != leaves.size()) throw InternalInvariantError("fewer unused colours than leaves");
  return e;
}

Tree instance_tree(const CaseCInstance& inst) {
  const int b = inst.base.size();
  if (inst.centres.size() != inst.leaf_counts.size()) throw ParameterError("centres and leaf counts differ in length");
  std::int64_t total = b;
  for (auto d : inst.leaf_counts) {
    if (d < 1) throw ParameterError("leaf counts must be positive");
    total += d;
  }
  if (total != inst.n + 1) {
    throw ParameterError("instance has " + std::to_string(total) + " vertices, expected n+1 = " +
                         std::to_string(inst.n + 1));
  }
  std::vector<Edge> edges = inst.base.edges();
  int next = b;
  for (std::size_t i = 0; i < inst.centres.size(); ++i) {
    int c = inst.centres[i];
    if (c < 0 || c >= b) throw ParameterError("centre out of range");
    for (std::int64_t j = 0; j < inst.leaf_counts[i]; ++j) edges.push_back({c, next++});
  }
  return Tree::from_edge_list(static_cast<int>(total), edges);
}

CaseCResult embed_case_c(const CaseCInstance& inst, const CaseCConfig& cfg) {
  const std::int64_t n = inst.n;
  const auto lp = log_params(n, cfg);
  CaseCResult res;
  res.tree = instance_tree(inst);
  const int b = inst.base.size();
  const int ell = static_cast<int>(inst.centres.size());
  {
    std::vector<char> seen(static_cast<std::size_t>(b), 0);
    for (int c : inst.centres) {
      if (seen[c]) throw ParameterError("repeated centre " + std::to_string(c));
      seen[c] = 1;
    }
  }
  if (100LL * b > n) throw PreconditionError("core tree has more than n/100 vertices");
  for (auto d : inst.leaf_counts) {
    if (d < lp.d_min) {
      throw PreconditionError("leaf count " + std::to_string(d) + " below D_min = " + std::to_string(lp.d_min));
    }
  }
  for (auto d : inst.leaf_counts) {
    if (3 * d >= 2 * n) {
      res.embedding = embed_one_large_vertex(res.tree, n);
      res.delegated = true;
      return res;
    }
  }

  std::vector<int> by_d(static_cast<std::size_t>(ell));
  std::iota(by_d.begin(), by_d.end(), 0);
  std::stable_sort(by_d.begin(), by_d.end(),
                   [&](int x, int y) { return inst.leaf_counts[x] > inst.leaf_counts[y]; });
  std::int64_t prefix = 0;
  int m = 0;
  while (m < ell && 20 * prefix <= n) prefix += inst.leaf_counts[by_d[m++]];
  if (20 * prefix <= n) throw PreconditionError("leaf counts sum to at most 0.05n");
  res.m = m;

  IntervalPlan plan;
  plan.n = n;
  plan.i0 = {frac_floor(n, 83, 100), frac_floor(n, 90, 100)};
  plan.i1 = {frac_floor(n, 70, 100), frac_floor(n, 71, 100)};
  plan.i2 = {frac_floor(n, 91, 100), frac_floor(n, 92, 100)};
  for (int i = 0; i < ell; ++i) (i < m ? plan.v1 : plan.v2).push_back(inst.centres[by_d[i]]);
  SmallTreeResult sr = embed_small_tree_intervals(inst.base, plan, cfg);
  const auto& img = sr.embedding.image;

  // Centre indices (into inst.centres) in image order within I1 and I2.
  std::vector<int> first(by_d.begin(), by_d.begin() + m), rest(by_d.begin() + m, by_d.end());
  auto by_image = [&](int x, int y) { return img[inst.centres[x]] < img[inst.centres[y]]; };
  std::sort(first.begin(), first.end(), by_image);
  std::sort(rest.begin(), rest.end(), by_image);
  std::vector<int> labelled(static_cast<std::size_t>(ell));  // label-1 -> centre index
  const int odd_count = (m + 1) / 2;
  for (int pos = 0; pos < m; ++pos) {
    int label = pos < odd_count ? 2 * pos + 1 : 2 * (m / 2 - (pos - odd_count));
    labelled[label - 1] = first[pos];
  }
  for (int i = 0; i < ell - m; ++i) labelled[m + i] = rest[i];

  NDColouring nd(n);
  const std::int64_t M = nd.order();
  std::vector<char> used_c(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : inst.base.edges()) used_c[nd.colour(img[e.u], img[e.v])] = 1;
  std::vector<Colour> free_colours;
  for (Colour c = 1; c <= n; ++c) {
    if (!used_c[c]) free_colours.push_back(c);
  }

  // First leaf id of each centre in instance_tree order.
  std::vector<int> leaf_start(static_cast<std::size_t>(ell));
  {
    int next = b;
    for (int i = 0; i < ell; ++i) {
      leaf_start[i] = next;
      next += static_cast<int>(inst.leaf_counts[i]);
    }
  }
  res.embedding.n = n;
  res.embedding.image.assign(static_cast<std::size_t>(n + 1), -1);
  std::vector<int> owner(static_cast<std::size_t>(M), -1);  // label of the centre owning each image
  for (int v = 0; v < b; ++v) {
    res.embedding.image[v] = img[v];
    owner[img[v]] = 0;
  }
  const std::int64_t u1 = img[inst.centres[labelled[0]]];
  const std::int64_t u2 = m >= 2 ? img[inst.centres[labelled[1]]] : -1;
  const std::int64_t hi2 = frac_floor(n, 82, 100), lo3 = frac_ceil(n, 96, 100), hi3 = frac_floor(n, 192, 100);
  std::size_t cpos = 0;
  for (int label = 1; label <= ell; ++label) {
    const int ci = labelled[label - 1];
    TypedCentre tc;
    tc.vertex = inst.centres[ci];
    tc.label = label;
    tc.type = label > m ? 3 : (label % 2 == 1 ? 1 : 2);
    tc.image = img[tc.vertex];
    tc.d = inst.leaf_counts[ci];
    if (cpos + static_cast<std::size_t>(tc.d) > free_colours.size()) {
      throw EmbeddingFailure("colour-blocks", label, "not enough unused colours for the leaf blocks");
    }
    tc.colour_lo = free_colours[cpos];
    tc.colour_hi = free_colours[cpos + static_cast<std::size_t>(tc.d) - 1];
    tc.leaf_lo = M;
    tc.leaf_hi = -1;
    for (std::int64_t j = 0; j < tc.d; ++j) {
      Colour c = free_colours[cpos++];
      Vertex x = tc.type == 1 ? mod(tc.image - c, M) : mod(tc.image + c, M);
      if (owner[x] >= 0) {
        throw EmbeddingFailure("post-check", label,
                               "leaf image " + std::to_string(x) + " of centre label " + std::to_string(label) +
                                   (owner[x] == 0 ? " hits the core copy"
                                                  : " clashes with centre label " + std::to_string(owner[x])));
      }
      owner[x] = label;
      res.embedding.image[leaf_start[ci] + j] = x;
      tc.leaf_lo = std::min(tc.leaf_lo, x);
      tc.leaf_hi = std::max(tc.leaf_hi, x);
    }
    bool inside = true;
    if (tc.type == 1) inside = tc.leaf_lo >= 1 && tc.leaf_hi < u1;
    if (tc.type == 2) inside = tc.leaf_lo > u2 && tc.leaf_hi <= hi2;
    if (tc.type == 3) inside = tc.leaf_lo >= lo3 && tc.leaf_hi <= hi3;
    if (!inside && res.interval_audit) {
      res.interval_audit = false;
      res.audit_note = "leaves of centre label " + std::to_string(label) + " leave the type-" +
                       std::to_string(tc.type) + " range";
    }
    res.centres.push_back(tc);
  }
  if (cpos != free_colours.size()) throw EmbeddingFailure("colour-blocks", -1, "unused colours left over");
  return res;
}

TreeInstance case_c_instance_from_tree(const Tree& t, std::int64_t d_min) {
  TreeInstance ti;
  ti.inst.n = t.size() - 1;
  auto pr = prune_leaf_clusters(t, std::max<std::int64_t>(d_min, 1));
  std::vector<int> to_base(static_cast<std::size_t>(t.size()), -1);
  for (int v : pr.kept) {
    to_base[v] = static_cast<int>(ti.base_to_tree.size());
    ti.base_to_tree.push_back(v);
  }
  std::vector<Edge> edges;
  for (const auto& e : t.edges()) {
    if (to_base[e.u] >= 0 && to_base[e.v] >= 0) edges.push_back({to_base[e.u], to_base[e.v]});
  }
  ti.inst.base = Tree::from_edge_list(static_cast<int>(pr.kept.size()), edges);
  for (std::size_t i = 0; i < pr.centres.size(); ++i) {
    int c = pr.centres[i];
    ti.inst.centres.push_back(to_base[c]);
    ti.inst.leaf_counts.push_back(pr.leaf_counts[i]);
    std::vector<int> ls;
    for (int w : t.neighbours(c)) {
      if (t.degree(w) == 1) ls.push_back(w);
    }
    ti.leaf_labels.push_back(std::move(ls));
  }
  return ti;
}

Embedding embed_tree_case_c(const Tree& t, const CaseCConfig& cfg) {
  const std::int64_t n = t.size() - 1;
  if (n < 1) throw PreconditionError("tree needs at least one edge");
  auto cnt = leaf_neighbour_counts(t);
  if (3LL * *std::max_element(cnt.begin(), cnt.end()) >= 2 * n) return embed_one_large_vertex(t, n);
  const auto lp = log_params(n, cfg);
  auto ti = case_c_instance_from_tree(t, lp.d_min);
  if (ti.inst.centres.empty()) throw PreconditionError("no vertex has at least D_min leaves");
  auto res = embed_case_c(ti.inst, cfg);
  Embedding out{n, std::vector<Vertex>(static_cast<std::size_t>(t.size()), -1)};
  for (std::size_t v = 0; v < ti.base_to_tree.size(); ++v) out.image[ti.base_to_tree[v]] = res.embedding.image[v];
  int next = ti.inst.base.size();
  for (const auto& ls : ti.leaf_labels) {
    for (int w : ls) out.image[w] = res.embedding.image[next++];
  }
  return out;
}

}  // namespace ringel
