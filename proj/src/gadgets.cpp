#include "ringel/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "ringel/error.hpp"
#include "ringel/matching.hpp"
#include "ringel/rng.hpp"

namespace ringel {

namespace {

std::vector<char> vertex_mask_of(std::int64_t n, std::span<const Vertex> vs) {
  std::vector<char> m(static_cast<std::size_t>(2 * n + 1), 0);
  for (Vertex v : vs) {
    if (v < 0 || v > 2 * n) throw ParameterError("vertex " + std::to_string(v) + " out of range");
    m[v] = 1;
  }
  return m;
}

std::vector<char> colour_mask_of(std::int64_t n, std::span<const Colour> cs) {
  std::vector<char> m(static_cast<std::size_t>(n) + 1, 0);
  for (Colour c : cs) {
    if (c < 1 || c > n) throw ParameterError("colour " + std::to_string(c) + " out of range");
    m[c] = 1;
  }
  return m;
}

bool all_distinct(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

std::vector<Colour> sorted(std::vector<Colour> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Vertices of (start, a_1, ..., a_l) appended to `out`, skipping the start.
void walk(std::int64_t M, Vertex start, std::initializer_list<std::int64_t> steps, std::vector<Vertex>& out) {
  Vertex v = start;
  for (auto a : steps) {
    v = mod(v + a, M);
    out.push_back(v);
  }
}

}  // namespace

// ---- paths --------------------------------------------------------------------------

std::vector<Vertex> PathSpec::vertices(std::int64_t n) const {
  const std::int64_t M = 2 * n + 1;
  std::vector<Vertex> out{mod(start, M)};
  for (auto a : steps) out.push_back(mod(out.back() + a, M));
  return out;
}

std::vector<Colour> PathSpec::colours(std::int64_t n) const {
  std::vector<Colour> out;
  for (auto a : steps) out.push_back(step_colour(n, a));
  return out;
}

bool PathSpec::valid(std::int64_t n) const {
  for (auto a : steps) {
    if (mod(a, 2 * n + 1) == 0) return false;
  }
  return all_distinct(vertices(n));
}

std::vector<Colour> path_colours(std::int64_t n, std::span<const Vertex> path) {
  NDColouring nd(n);
  std::vector<Colour> out;
  for (std::size_t i = 1; i < path.size(); ++i) out.push_back(nd.colour(path[i - 1], path[i]));
  return out;
}

// ---- two-switchers ---------------------------------------------------------------------

const std::vector<Vertex>& TwoSwitcher::path_for(Colour c) const {
  if (c == c1) return p;
  if (c == c2) return q;
  throw ParameterError("colour " + std::to_string(c) + " is not switched by this gadget");
}

std::vector<Vertex> TwoSwitcher::interior() const {
  std::vector<Vertex> out;
  for (const auto* path : {&p, &q}) {
    for (std::size_t i = 1; i + 1 < path->size(); ++i) out.push_back((*path)[i]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TwoSwitcher find_two_switcher(std::int64_t n, Vertex x, Vertex y, Colour c1, Colour c2,
                              const std::vector<char>& vmask, const std::vector<char>& cmask) {
  const std::int64_t M = 2 * n + 1;
  if (x == y) throw PreconditionError("switcher endpoints must differ");
  if (c1 == c2) throw PreconditionError("switcher colours must differ");
  if (c1 < 1 || c1 > n || c2 < 1 || c2 > n) throw ParameterError("switcher colour out of range");
  TwoSwitcher s;
  s.n = n;
  s.x = x;
  s.y = y;
  s.c1 = c1;
  s.c2 = c2;
  std::int64_t k = mod((c2 - c1) * (n + 1), M);
  Colour a = c1, b = c2;
  if (k > n) {
    k = M - k;
    a = c2;
    b = c1;
    s.swapped = true;
  }
  s.k = k;
  // y - x = a + k forces e = -i for every shift; the reverse direction is never degenerate as well.
  if (mod(y - x - a - k, M) == 0) {
    TwoSwitcher r = find_two_switcher(n, y, x, c1, c2, vmask, cmask);
    std::swap(r.x, r.y);
    std::reverse(r.p.begin(), r.p.end());
    std::reverse(r.q.begin(), r.q.end());
    return r;
  }
  auto banned = [&](Colour c) { return cmask[c] || c == a || c == b; };

  std::vector<Vertex> base;
  for (Colour d1 = 1; d1 <= n; ++d1) {
    if (banned(d1)) continue;
    for (Colour d2 = 1; d2 <= n; ++d2) {
      if (d2 == d1 || banned(d2)) continue;
      base = {0};
      walk(M, 0, {a, d1, d2}, base);
      if (!all_distinct(base)) continue;
      for (Colour d3 = 1; d3 <= n; ++d3) {
        if (d3 == d1 || d3 == d2 || banned(d3)) continue;
        std::int64_t d4 = mod(d1 + d2 - d3 - k, M);
        if (d4 < 1 || d4 > n || banned(d4) || d4 == d1 || d4 == d2 || d4 == d3) continue;
        // Interiors relative to x + i; these do not depend on the shift.
        std::vector<Vertex> f1{0}, f2{0};
        walk(M, 0, {a, d1, d2, -d3, -d4}, f1);
        walk(M, 0, {b, d4, d3, -d2, -d1}, f2);
        if (!all_distinct(f1) || !all_distinct(f2)) continue;
        for (std::int64_t i = 1; i <= n; ++i) {
          if (banned(i) || i == d1 || i == d2 || i == d3 || i == d4) continue;
          std::int64_t e = mod(y - x - i - a - k, M);
          if (e == 0) continue;
          Colour ce = step_colour(n, e);
          if (banned(ce) || ce == i || ce == d1 || ce == d2 || ce == d3 || ce == (Colour)d4) continue;
          std::vector<Vertex> P{x}, Q{x};
          walk(M, x, {i, a, d1, d2, -d3, -(std::int64_t)d4, e}, P);
          walk(M, x, {i, b, (std::int64_t)d4, d3, -d2, -d1, e}, Q);
          if (P.back() != y || Q.back() != y) continue;
          if (!all_distinct(P) || !all_distinct(Q)) continue;
          bool clear = true;
          for (std::size_t t = 1; t + 1 < P.size() && clear; ++t) clear = !vmask[P[t]] && !vmask[Q[t]];
          if (!clear) continue;
          s.d = {d1, d2, d3, static_cast<Colour>(d4)};
          s.shift = i;
          s.shared = sorted({i, d1, d2, d3, static_cast<Colour>(d4), ce});
          if (s.swapped) {
            s.p = std::move(Q);
            s.q = std::move(P);
          } else {
            s.p = std::move(P);
            s.q = std::move(Q);
          }
          return s;
        }
      }
    }
  }
  throw InternalInvariantError("two-switcher search exhausted every choice of d1, d2, d3 and shift");
}

TwoSwitcher build_two_switcher(std::int64_t n, Vertex x, Vertex y, Colour c1, Colour c2,
                               std::span<const Vertex> forbidden_vertices,
                               std::span<const Colour> forbidden_colours) {
  if (c1 == c2) throw PreconditionError("switcher colours must differ");
  if (x == y) throw PreconditionError("switcher endpoints must differ");
  if (25 * static_cast<std::int64_t>(forbidden_vertices.size()) > n ||
      25 * static_cast<std::int64_t>(forbidden_colours.size()) > n) {
    throw PreconditionError("forbidden sets must have at most n/25 elements");
  }
  const std::int64_t M = 2 * n + 1;
  if (x < 0 || x >= M || y < 0 || y >= M) throw ParameterError("switcher endpoint out of range");
  return find_two_switcher(n, x, y, c1, c2, vertex_mask_of(n, forbidden_vertices),
                           colour_mask_of(n, forbidden_colours));
}

namespace {

Check check_rainbow_path(std::int64_t n, const std::vector<Vertex>& path, Vertex x, Vertex y,
                         std::size_t length, const std::vector<Colour>& expected, const char* name) {
  std::string tag(name);
  if (path.size() != length + 1) return Check::fail(tag + " has the wrong length");
  if (path.front() != x || path.back() != y) return Check::fail(tag + " has the wrong endpoints");
  if (!all_distinct(path)) return Check::fail(tag + " repeats a vertex");
  auto cs = path_colours(n, path);
  auto scs = sorted(cs);
  if (std::adjacent_find(scs.begin(), scs.end()) != scs.end()) return Check::fail(tag + " is not rainbow");
  if (scs != expected) return Check::fail(tag + " uses the wrong colour set");
  return {};
}

}  // namespace

Check verify_two_switcher(const TwoSwitcher& s, std::span<const Vertex> forbidden_vertices,
                          std::span<const Colour> forbidden_colours) {
  if (s.shared.size() != 6) return Check::fail("shared colour set does not have size 6");
  std::set<Colour> bad(forbidden_colours.begin(), forbidden_colours.end());
  bad.insert(s.c1);
  bad.insert(s.c2);
  for (Colour c : s.shared) {
    if (bad.count(c)) return Check::fail("shared colour " + std::to_string(c) + " is forbidden");
  }
  auto with = [&](Colour c) {
    auto v = s.shared;
    v.push_back(c);
    return sorted(v);
  };
  if (auto c = check_rainbow_path(s.n, s.p, s.x, s.y, 7, with(s.c1), "first path"); !c) return c;
  if (auto c = check_rainbow_path(s.n, s.q, s.x, s.y, 7, with(s.c2), "second path"); !c) return c;
  std::set<Vertex> fv(forbidden_vertices.begin(), forbidden_vertices.end());
  for (Vertex v : s.interior()) {
    if (fv.count(v)) return Check::fail("interior vertex " + std::to_string(v) + " is forbidden");
  }
  return {};
}

// ---- multi-switchers ---------------------------------------------------------------------

namespace {

MultiSwitcher find_multi_switcher(std::int64_t n, Vertex x, Vertex y, std::vector<Colour> cs,
                                  std::vector<char> vmask, std::vector<char> cmask) {
  const std::int64_t M = 2 * n + 1;
  const std::size_t ell = cs.size();
  std::sort(cs.begin(), cs.end());
  MultiSwitcher s;
  s.n = n;
  s.x = x;
  s.y = y;
  s.targets = cs;
  std::vector<char> target(static_cast<std::size_t>(n) + 1, 0);
  for (Colour c : cs) target[c] = 1;

  // Pivot x1: links d_i = colour of (x1 - c_i - x) distinct, outside C and C'; mids y_i = x1 - c_i allowed.
  Vertex x1 = -1;
  std::vector<Colour> links(ell);
  std::vector<Vertex> mids(ell);
  for (Vertex cand = 0; cand < M && x1 < 0; ++cand) {
    if (cand == x || cand == y || vmask[cand]) continue;
    bool ok = true;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < ell && ok; ++i) {
      std::int64_t step = mod(cand - cs[i] - x, M);
      if (step == 0) {
        ok = false;
        break;
      }
      Colour d = step_colour(n, step);
      Vertex yi = mod(cand - cs[i], M);
      if (target[d] || cmask[d] || seen[d] || vmask[yi] || yi == y || yi == x) ok = false;
      seen[d] = 1;
      links[i] = d;
      mids[i] = yi;
    }
    if (ok) x1 = cand;
  }
  if (x1 < 0) throw InternalInvariantError("no admissible pivot vertex for the 1-in-l switcher");
  s.links = links;
  s.mids = mids;

  std::vector<char> taken(static_cast<std::size_t>(M), 0);
  for (Vertex v : {x, y, x1}) taken[v] = 1;
  for (Vertex v : mids) taken[v] = 1;
  s.pivots = {x, x1};
  Vertex scan = 0;
  for (std::size_t i = 2; i < ell; ++i) {
    while (scan < M && (taken[scan] || vmask[scan])) ++scan;
    if (scan >= M) throw InternalInvariantError("ran out of pivot vertices");
    taken[scan] = 1;
    s.pivots.push_back(scan++);
  }
  s.pivots.push_back(y);

  for (std::size_t v = 0; v < taken.size(); ++v) {
    if (taken[v]) vmask[v] = 1;
  }
  for (Colour c : cs) cmask[c] = 1;
  for (Colour d : links) cmask[d] = 1;
  for (std::size_t i = 0; i + 1 < ell; ++i) {
    TwoSwitcher sw = find_two_switcher(n, s.pivots[i + 1], s.pivots[i + 2], links[i], links[i + 1], vmask, cmask);
    for (Vertex v : sw.interior()) vmask[v] = 1;
    for (Colour c : sw.shared) cmask[c] = 1;
    s.chain.push_back(std::move(sw));
  }

  s.shared = links;
  for (const auto& sw : s.chain) s.shared.insert(s.shared.end(), sw.shared.begin(), sw.shared.end());
  std::sort(s.shared.begin(), s.shared.end());
  s.vertex_set = s.pivots;
  s.vertex_set.insert(s.vertex_set.end(), mids.begin(), mids.end());
  for (const auto& sw : s.chain) {
    auto in = sw.interior();
    s.vertex_set.insert(s.vertex_set.end(), in.begin(), in.end());
  }
  std::sort(s.vertex_set.begin(), s.vertex_set.end());
  s.vertex_set.erase(std::unique(s.vertex_set.begin(), s.vertex_set.end()), s.vertex_set.end());
  return s;
}

}  // namespace

std::vector<Vertex> MultiSwitcher::select(Colour c) const {
  auto it = std::find(targets.begin(), targets.end(), c);
  if (it == targets.end()) throw ParameterError("colour " + std::to_string(c) + " is not a target of this switcher");
  const std::size_t j = static_cast<std::size_t>(it - targets.begin());
  std::vector<Vertex> path{pivots[0], mids[j], pivots[1]};
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& seg = chain[i].path_for(i < j ? links[i] : links[i + 1]);
    path.insert(path.end(), seg.begin() + 1, seg.end());
  }
  return path;
}

MultiSwitcher build_multi_switcher(std::int64_t n, Vertex x, Vertex y, std::span<const Colour> colours,
                                   std::span<const Vertex> forbidden_vertices,
                                   std::span<const Colour> forbidden_colours) {
  if (colours.size() < 2 || colours.size() > 100) throw PreconditionError("1-in-l switchers need 2 <= l <= 100");
  if (1000 * static_cast<std::int64_t>(forbidden_vertices.size()) > n ||
      1000 * static_cast<std::int64_t>(forbidden_colours.size()) > n) {
    throw PreconditionError("forbidden sets must have at most n/1000 elements");
  }
  if (x == y) throw PreconditionError("switcher endpoints must differ");
  std::vector<Colour> cs(colours.begin(), colours.end());
  if (!all_distinct(cs)) throw PreconditionError("target colours must be distinct");
  auto cm = colour_mask_of(n, forbidden_colours);
  for (Colour c : cs) {
    if (c < 1 || c > n) throw ParameterError("target colour out of range");
    if (cm[c]) throw PreconditionError("target colour " + std::to_string(c) + " is also forbidden");
  }
  auto vm = vertex_mask_of(n, forbidden_vertices);
  if (vm[x] || vm[y]) throw PreconditionError("switcher endpoint is forbidden");
  return find_multi_switcher(n, x, y, std::move(cs), std::move(vm), std::move(cm));
}

std::vector<MultiSwitcher> build_switcher_family(std::int64_t n, Vertex x, Vertex y,
                                                 std::span<const Colour> colours, int count) {
  std::vector<MultiSwitcher> out;
  std::vector<char> vm(static_cast<std::size_t>(2 * n + 1), 0);
  std::vector<char> cm(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Colour> cs(colours.begin(), colours.end());
  for (int i = 0; i < count; ++i) {
    auto s = find_multi_switcher(n, x, y, cs, vm, cm);
    for (Vertex v : s.vertex_set) {
      if (v != x && v != y) vm[v] = 1;
    }
    for (Colour c : s.shared) cm[c] = 1;
    out.push_back(std::move(s));
  }
  return out;
}

Check verify_multi_switcher(const MultiSwitcher& s, std::span<const Vertex> forbidden_vertices,
                            std::span<const Colour> forbidden_colours) {
  const std::int64_t ell = static_cast<std::int64_t>(s.targets.size());
  if (static_cast<std::int64_t>(s.shared.size()) != ell + 6 * (ell - 1)) {
    return Check::fail("shared colour count is not l + 6(l-1)");
  }
  if (static_cast<std::int64_t>(s.vertex_set.size()) > 2 * ell + 1 + 12 * (ell - 1)) {
    return Check::fail("vertex set larger than 2l + 1 + 12(l-1)");
  }
  std::set<Colour> bad(forbidden_colours.begin(), forbidden_colours.end());
  bad.insert(s.targets.begin(), s.targets.end());
  for (Colour c : s.shared) {
    if (bad.count(c)) return Check::fail("shared colour " + std::to_string(c) + " is forbidden or a target");
  }
  std::set<Vertex> fv(forbidden_vertices.begin(), forbidden_vertices.end());
  for (Vertex v : s.vertex_set) {
    if (fv.count(v)) return Check::fail("vertex " + std::to_string(v) + " is forbidden");
  }
  for (Colour c : s.targets) {
    auto path = s.select(c);
    auto expect = s.shared;
    expect.push_back(c);
    std::sort(expect.begin(), expect.end());
    auto chk = check_rainbow_path(s.n, path, s.x, s.y, static_cast<std::size_t>(s.path_length()), expect,
                                  "selected path");
    if (!chk) return Check::fail(chk.reason + " for colour " + std::to_string(c));
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      if (!std::binary_search(s.vertex_set.begin(), s.vertex_set.end(), path[i])) {
        return Check::fail("selected path leaves the vertex set");
      }
    }
  }
  return {};
}

void validate_path_length(std::int64_t k) {
  if (k <= 0 || k % 12 != 7 || k % 695 != 0) {
    throw ParameterError("path length " + std::to_string(k) + " must satisfy k = 7 mod 12 and 695 | k");
  }
}

void validate_integral_ratio(std::int64_t num, std::int64_t den, const char* what) {
  if (den <= 0 || num % den != 0) {
    throw ParameterError(std::string(what) + " = " + std::to_string(num) + "/" + std::to_string(den) +
                         " is not an integer");
  }
}

// ---- matching switchers ---------------------------------------------------------------------

std::vector<std::pair<Vertex, Vertex>> MatchingSwitcher::matching(std::size_t j) const {
  const std::size_t ell = xs.size();
  if (j >= ell) throw ParameterError("matching index out of range");
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i < ell; ++i) {
    if (i == j) {
      out.emplace_back(xs[i], ys[i]);
    } else if (i < j) {
      out.emplace_back(xs[i], zs[i]);
    } else {
      out.emplace_back(xs[i], zps[i - 1]);
    }
  }
  return out;
}

std::vector<Vertex> MatchingSwitcher::partner_set() const {
  std::vector<Vertex> out = ys;
  out.insert(out.end(), zs.begin(), zs.end());
  out.insert(out.end(), zps.begin(), zps.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<Vertex, Vertex>> MatchingSwitcher::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i < xs.size(); ++i) out.emplace_back(xs[i], ys[i]);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    out.emplace_back(xs[i], zs[i]);
    out.emplace_back(xs[i + 1], zps[i]);
  }
  return out;
}

MatchingSwitcher build_matching_switcher(const Colouring& col, const MatchingPools& pools,
                                         std::span<const Colour> targets, const std::vector<char>& vertex_mask,
                                         const std::vector<char>& colour_mask) {
  const std::int64_t M = col.order();
  const std::int64_t n = col.num_colours();
  const std::size_t ell = targets.size();
  if (ell == 0) throw PreconditionError("matching switcher needs at least one target colour");
  std::vector<char> used(static_cast<std::size_t>(M), 0);
  for (std::size_t v = 0; v < used.size() && v < vertex_mask.size(); ++v) used[v] = vertex_mask[v];
  std::vector<char> cused(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t c = 0; c < cused.size() && c < colour_mask.size(); ++c) cused[c] = colour_mask[c];
  for (Colour c : targets) {
    if (c < 1 || c > n) throw ParameterError("target colour out of range");
    if (cused[c]) throw PreconditionError("target colour " + std::to_string(c) + " is excluded");
    cused[c] = 1;
  }
  std::vector<char> in_z(static_cast<std::size_t>(M), 0), in_v0(in_z);
  for (Vertex v : pools.z_pool) in_z[v] = 1;
  for (Vertex v : pools.link_pool) in_v0[v] = 1;

  MatchingSwitcher s;
  s.targets.assign(targets.begin(), targets.end());
  for (std::size_t i = 0; i < ell; ++i) {
    bool done = false;
    for (Vertex x : pools.x_pool) {
      if (used[x]) continue;
      auto nb = col.neighbours(x, targets[i]);
      std::sort(nb.begin(), nb.end());
      for (Vertex y : nb) {
        if (in_z[y] && !used[y] && y != x) {
          s.xs.push_back(x);
          s.ys.push_back(y);
          used[x] = used[y] = 1;
          done = true;
          break;
        }
      }
      if (done) break;
    }
    if (!done) {
      throw ConstructionFailure(static_cast<std::int64_t>(i),
                                "no free X-Z edge of target colour " + std::to_string(targets[i]));
    }
  }
  for (std::size_t i = 0; i + 1 < ell; ++i) {
    bool done = false;
    for (Colour d : pools.link_colours) {
      if (d < 1 || d > n || cused[d]) continue;
      auto a = col.neighbours(s.xs[i], d);
      auto b = col.neighbours(s.xs[i + 1], d);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      Vertex z = -1, zp = -1;
      for (Vertex v : a) {
        if (in_v0[v] && !used[v]) {
          z = v;
          break;
        }
      }
      if (z < 0) continue;
      for (Vertex v : b) {
        if (in_v0[v] && (!used[v] || v == z)) {
          zp = v;
          break;
        }
      }
      if (zp < 0) {
        // z may still pair with another choice for z'; retry z on the second neighbour.
        continue;
      }
      s.links.push_back(d);
      s.zs.push_back(z);
      s.zps.push_back(zp);
      used[z] = used[zp] = 1;
      cused[d] = 1;
      done = true;
      break;
    }
    if (!done) {
      throw ConstructionFailure(static_cast<std::int64_t>(i), "no link colour joins x_" + std::to_string(i + 1) +
                                                                  " and x_" + std::to_string(i + 2));
    }
  }
  return s;
}

Check verify_matching_switcher(const Colouring& col, const MatchingSwitcher& s) {
  const std::size_t ell = s.xs.size();
  if (s.targets.size() != ell || s.ys.size() != ell || s.links.size() + 1 != ell || s.zs.size() + 1 != ell ||
      s.zps.size() + 1 != ell) {
    return Check::fail("gadget arrays have inconsistent sizes");
  }
  auto partners = s.partner_set();
  for (Vertex x : s.xs) {
    if (std::binary_search(partners.begin(), partners.end(), x)) return Check::fail("X' meets V'");
  }
  if (!all_distinct(s.xs)) return Check::fail("repeated x vertex");
  for (std::size_t j = 0; j < ell; ++j) {
    auto m = s.matching(j);
    std::vector<Vertex> ends;
    std::vector<Colour> cs;
    for (auto [a, b] : m) {
      ends.push_back(b);
      cs.push_back(col.colour(a, b));
    }
    if (!all_distinct(ends)) return Check::fail("M_" + std::to_string(j + 1) + " is not a matching");
    auto expect = s.links;
    expect.push_back(s.targets[j]);
    if (sorted(cs) != sorted(expect)) return Check::fail("M_" + std::to_string(j + 1) + " has the wrong colours");
    if (!all_distinct(cs)) return Check::fail("M_" + std::to_string(j + 1) + " is not rainbow");
  }
  return {};
}

// ---- RMBG -------------------------------------------------------------------------------------

int RMBG::max_degree() const {
  std::vector<int> rdeg(static_cast<std::size_t>(right()), 0);
  int best = 0;
  for (const auto& nb : adj) {
    best = std::max(best, static_cast<int>(nb.size()));
    for (int r : nb) ++rdeg[r];
  }
  for (int d : rdeg) best = std::max(best, d);
  return best;
}

std::vector<int> RMBG::match(std::span<const int> y0) const {
  std::vector<char> allowed(static_cast<std::size_t>(right()), 0);
  for (int r = 0; r < 2 * h; ++r) allowed[r] = 1;
  for (int r : y0) {
    if (r < 2 * h || r >= 4 * h) throw ParameterError("Y0 must lie in Y'");
    allowed[r] = 1;
  }
  std::vector<std::vector<int>> sub(adj.size());
  for (std::size_t l = 0; l < adj.size(); ++l) {
    for (int r : adj[l]) {
      if (allowed[r]) sub[l].push_back(r);
    }
  }
  return max_bipartite_matching(right(), sub);
}

namespace {

RMBG fixed_rmbg(int h) {
  RMBG g;
  g.h = h;
  g.adj.assign(static_cast<std::size_t>(3 * h), {});
  if (h == 1) {
    g.adj[0] = {0, 2};
    g.adj[1] = {1, 3};
    g.adj[2] = {0, 2, 3};
    return g;
  }
  // First 2h left vertices own one Y vertex and one Y' vertex; the last h
  // see all of Y'.
  for (int i = 0; i < 2 * h; ++i) g.adj[i] = {i, 2 * h + i};
  for (int i = 2 * h; i < 3 * h; ++i) {
    for (int r = 2 * h; r < 4 * h; ++r) g.adj[i].push_back(r);
  }
  return g;
}

RMBG random_rmbg(int h, int rounds, std::mt19937_64& rng) {
  RMBG g;
  g.h = h;
  g.adj.assign(static_cast<std::size_t>(3 * h), {});
  std::vector<int> rights(static_cast<std::size_t>(4 * h));
  for (int r = 0; r < rounds; ++r) {
    std::iota(rights.begin(), rights.end(), 0);
    std::shuffle(rights.begin(), rights.end(), rng);
    for (std::size_t j = 0; j < rights.size(); ++j) g.adj[j % static_cast<std::size_t>(3 * h)].push_back(rights[j]);
  }
  for (auto& nb : g.adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return g;
}

}  // namespace

RMBG build_rmbg(int h, int max_degree, std::uint64_t seed) {
  if (h < 1) throw PreconditionError("RMBG scale h must be positive");
  RMBG g;
  if (h <= 3) {
    g = fixed_rmbg(h);
    g.max_degree_bound = max_degree;
    if (g.max_degree() > max_degree) throw ConstructionFailure(-1, "degree bound below the fixed instance");
    return g;
  }
  const int rounds = std::min(8, max_degree / 2);
  if (rounds < 1) throw ConstructionFailure(-1, "degree bound too small for the randomized construction");
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto rng = stream_for(seed, static_cast<std::uint64_t>(attempt));
    g = random_rmbg(h, rounds, rng);
    g.max_degree_bound = max_degree;
    if (g.max_degree() > max_degree) continue;
    if (verify_rmbg(g, 1000, seed + static_cast<std::uint64_t>(attempt))) return g;
  }
  throw ConstructionFailure(-1, "no robustly matchable graph found within the retry budget");
}

Check verify_rmbg(const RMBG& g, int samples, std::uint64_t seed) {
  const int h = g.h;
  if (static_cast<int>(g.adj.size()) != 3 * h) return Check::fail("left side does not have 3h vertices");
  for (const auto& nb : g.adj) {
    for (int r : nb) {
      if (r < 0 || r >= 4 * h) return Check::fail("edge to a right vertex out of range");
    }
  }
  if (g.max_degree() > g.max_degree_bound) return Check::fail("maximum degree above the bound");
  auto test = [&](const std::vector<int>& y0) -> bool { return matching_size(g.match(y0)) == 3 * h; };
  std::vector<int> pool(static_cast<std::size_t>(2 * h));
  std::iota(pool.begin(), pool.end(), 2 * h);
  if (h <= 5) {
    std::vector<char> pick(static_cast<std::size_t>(2 * h), 0);
    std::fill(pick.begin(), pick.begin() + h, 1);
    do {
      std::vector<int> y0;
      for (int i = 0; i < 2 * h; ++i) {
        if (pick[i]) y0.push_back(pool[i]);
      }
      if (!test(y0)) return Check::fail("no perfect matching for some Y0");
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return {};
  }
  auto rng = stream_for(seed, 0);
  for (int s = 0; s < samples; ++s) {
    auto p = pool;
    std::shuffle(p.begin(), p.end(), rng);
    p.resize(static_cast<std::size_t>(h));
    if (!test(p)) return Check::fail("no perfect matching for a sampled Y0");
  }
  return {};
}

// ---- flexible sets ------------------------------------------------------------------------------

MatchingPools default_pools(std::int64_t n, std::span<const Colour> reserved) {
  MatchingPools p;
  for (Vertex v = 0; v < 2 * n + 1; ++v) {
    auto r = v % 20;
    if (r < 5) {
      p.x_pool.push_back(v);
    } else if (r < 12) {
      p.z_pool.push_back(v);
    } else {
      p.link_pool.push_back(v);
    }
  }
  std::vector<char> res(static_cast<std::size_t>(n) + 1, 0);
  for (Colour c : reserved) {
    if (c >= 1 && c <= n) res[c] = 1;
  }
  for (Colour c = 1; c <= n; ++c) {
    if (!res[c]) p.link_colours.push_back(c);
  }
  return p;
}

FlexibleSet assemble_flexible_set(const Colouring& col, const RMBG& g, std::span<const Colour> right_colours,
                                  const MatchingPools& pools) {
  if (static_cast<int>(right_colours.size()) != g.right()) {
    throw PreconditionError("need one colour per right vertex of the RMBG");
  }
  std::vector<Colour> rc(right_colours.begin(), right_colours.end());
  if (!all_distinct(rc)) throw PreconditionError("right-vertex colours must be distinct");
  FlexibleSet fs;
  fs.graph = g;
  fs.right_colours = rc;
  fs.fixed.assign(rc.begin(), rc.begin() + 2 * g.h);
  fs.reservoir.assign(rc.begin() + 2 * g.h, rc.end());
  const std::int64_t n = col.num_colours();
  std::vector<char> vmask(static_cast<std::size_t>(col.order()), 0);
  std::vector<char> cmask(static_cast<std::size_t>(n) + 1, 0);
  for (Colour c : rc) cmask[c] = 1;
  for (int u = 0; u < g.left(); ++u) {
    std::vector<Colour> targets;
    for (int r : g.adj[u]) targets.push_back(rc[r]);
    // Target colours are reserved globally but each unit must be allowed its own.
    for (Colour c : targets) cmask[c] = 0;
    MatchingSwitcher sw;
    try {
      sw = build_matching_switcher(col, pools, targets, vmask, cmask);
    } catch (const ConstructionFailure& e) {
      throw ConstructionFailure(u, "unit " + std::to_string(u) + ": " + e.what());
    }
    for (Colour c : rc) cmask[c] = 1;
    for (Vertex v : sw.xs) vmask[v] = 1;
    for (Vertex v : sw.partner_set()) vmask[v] = 1;
    for (Colour d : sw.links) cmask[d] = 1;
    fs.units.push_back(std::move(sw));
  }
  return fs;
}

std::vector<std::pair<Vertex, Vertex>> absorb(const Colouring& col, const FlexibleSet& fs,
                                              std::span<const Colour> chosen) {
  (void)col;
  const int h = fs.graph.h;
  if (static_cast<int>(chosen.size()) != h) {
    throw PreconditionError("absorb needs exactly " + std::to_string(h) + " colours");
  }
  std::vector<int> y0;
  for (Colour c : chosen) {
    auto it = std::find(fs.right_colours.begin() + 2 * h, fs.right_colours.end(), c);
    if (it == fs.right_colours.end()) throw PreconditionError("colour " + std::to_string(c) + " is not in the reservoir");
    y0.push_back(static_cast<int>(it - fs.right_colours.begin()));
  }
  {
    auto t = y0;
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw PreconditionError("repeated reservoir colour");
  }
  auto ml = fs.graph.match(y0);
  if (matching_size(ml) != fs.graph.left()) throw InternalInvariantError("RMBG has no perfect matching for this draw");
  std::vector<std::pair<Vertex, Vertex>> out;
  for (int u = 0; u < fs.graph.left(); ++u) {
    Colour c = fs.right_colours[ml[u]];
    const auto& unit = fs.units[u];
    auto j = static_cast<std::size_t>(std::find(unit.targets.begin(), unit.targets.end(), c) - unit.targets.begin());
    auto m = unit.matching(j);
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

// ---- greedy matchings and paths ----------------------------------------------------------------

std::vector<std::pair<Vertex, Vertex>> cover_colours_matching(const Colouring& col, std::span<const Vertex> xs,
                                                              std::span<const Vertex> vs,
                                                              std::span<const Colour> required,
                                                              std::span<const Colour> fill) {
  const std::int64_t M = col.order();
  const std::int64_t n = col.num_colours();
  std::vector<char> in_v(static_cast<std::size_t>(M), 0), vused(in_v), xdone(in_v);
  std::vector<char> cused(static_cast<std::size_t>(n) + 1, 0), in_fill(cused);
  for (Vertex v : vs) in_v[v] = 1;
  for (Vertex x : xs) {
    if (in_v[x]) throw PreconditionError("X and V must be disjoint");
  }
  for (Colour c : fill) in_fill[c] = 1;
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i < required.size(); ++i) {
    Colour c = required[i];
    if (cused[c]) throw PreconditionError("required colour " + std::to_string(c) + " listed twice");
    bool done = false;
    for (Vertex x : xs) {
      if (xdone[x]) continue;
      auto nb = col.neighbours(x, c);
      std::sort(nb.begin(), nb.end());
      for (Vertex v : nb) {
        if (in_v[v] && !vused[v]) {
          out.emplace_back(x, v);
          xdone[x] = vused[v] = 1;
          cused[c] = 1;
          done = true;
          break;
        }
      }
      if (done) break;
    }
    if (!done) {
      throw ConstructionFailure(static_cast<std::int64_t>(i),
                                "required colour " + std::to_string(c) + " has no free X-V edge");
    }
  }
  for (Vertex x : xs) {
    if (xdone[x]) continue;
    bool done = false;
    for (Colour c : fill) {
      if (cused[c]) continue;
      auto nb = col.neighbours(x, c);
      std::sort(nb.begin(), nb.end());
      for (Vertex v : nb) {
        if (in_v[v] && !vused[v]) {
          out.emplace_back(x, v);
          xdone[x] = vused[v] = 1;
          cused[c] = 1;
          done = true;
          break;
        }
      }
      if (done) break;
    }
    if (!done) throw ConstructionFailure(x, "vertex " + std::to_string(x) + " has no free fill-colour edge into V");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<Vertex, 4>> connect_pairs_length3(const Colouring& col,
                                                         std::span<const std::pair<Vertex, Vertex>> pairs,
                                                         std::span<const Vertex> pool,
                                                         std::span<const Colour> colours) {
  const std::int64_t M = col.order();
  const std::int64_t n = col.num_colours();
  std::vector<char> in_pool(static_cast<std::size_t>(M), 0), vused(in_pool);
  std::vector<char> in_c(static_cast<std::size_t>(n) + 1, 0), cused(in_c);
  for (Vertex v : pool) in_pool[v] = 1;
  for (Colour c : colours) in_c[c] = 1;
  for (auto [x, y] : pairs) vused[x] = vused[y] = 1;
  std::vector<std::array<Vertex, 4>> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, y] = pairs[i];
    bool done = false;
    for (Vertex a : pool) {
      if (vused[a]) continue;
      Colour c1 = col.colour(x, a);
      if (!in_c[c1] || cused[c1]) continue;
      for (Colour c3 : colours) {
        if (cused[c3] || c3 == c1) continue;
        auto nb = col.neighbours(y, c3);
        std::sort(nb.begin(), nb.end());
        for (Vertex b : nb) {
          if (!in_pool[b] || vused[b] || b == a) continue;
          Colour c2 = col.colour(a, b);
          if (!in_c[c2] || cused[c2] || c2 == c1 || c2 == c3) continue;
          out.push_back({x, a, b, y});
          vused[a] = vused[b] = 1;
          cused[c1] = cused[c2] = cused[c3] = 1;
          done = true;
          break;
        }
        if (done) break;
      }
      if (done) break;
    }
    if (!done) {
      throw ConstructionFailure(static_cast<std::int64_t>(i), "no admissible length-3 path for pair " +
                                                                  std::to_string(i) + " (" + std::to_string(x) +
                                                                  ", " + std::to_string(y) + ")");
    }
  }
  return out;
}

}  // namespace ringel
