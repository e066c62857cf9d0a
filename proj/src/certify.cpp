#include "ringel/certify.hpp"

#include <openssl/evp.h>

#include <algorithm>

#include "json.hpp"

#include "ringel/error.hpp"

namespace ringel {

using nlohmann::json;

namespace {

std::string edge_str(const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

// Index of the K_{2n+1} edge {a, b} among the n(2n+1) edges: (lower end, colour).
std::int64_t edge_index(std::int64_t n, Vertex a, Vertex b) {
  const std::int64_t M = 2 * n + 1;
  const Colour c = colour_of(n, a, b);
  const Vertex lo = mod(a + c, M) == b ? a : b;
  return lo * n + (c - 1);
}

Verdict check_injective(const Embedding& e, const Tree& t) {
  if (e.n < 1) return Verdict::fail("n must be positive");
  if (static_cast<int>(e.image.size()) != t.size()) {
    return Verdict::fail("image has " + std::to_string(e.image.size()) + " entries for a tree on " +
                         std::to_string(t.size()) + " vertices");
  }
  const std::int64_t M = 2 * e.n + 1;
  std::vector<int> owner(static_cast<std::size_t>(M), -1);
  for (int v = 0; v < t.size(); ++v) {
    const Vertex x = e.image[v];
    if (x < 0 || x >= M) {
      return Verdict::fail("vertex " + std::to_string(v) + " maps to " + std::to_string(x) + ", outside Z_" +
                           std::to_string(M));
    }
    if (owner[x] >= 0) {
      return Verdict::fail("vertex clash: tree vertices " + std::to_string(owner[x]) + " and " + std::to_string(v) +
                           " both map to " + std::to_string(x));
    }
    owner[x] = v;
  }
  return {};
}

}  // namespace

Verdict verify_rainbow(const Embedding& e, const Tree& t) {
  if (auto v = check_injective(e, t); !v) return v;
  std::vector<int> first(static_cast<std::size_t>(e.n) + 1, -1);
  const auto& edges = t.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Colour c = colour_of(e.n, e.image[edges[i].u], e.image[edges[i].v]);
    if (first[c] >= 0) {
      return Verdict::fail("colour clash at colour " + std::to_string(c) + ": edges " + edge_str(edges[first[c]]) +
                           " and " + edge_str(edges[i]));
    }
    first[c] = static_cast<int>(i);
  }
  return {};
}

std::optional<ShiftCollision> find_shift_collision(const Embedding& e, const Tree& t) {
  if (!check_injective(e, t)) return std::nullopt;
  const std::int64_t M = 2 * e.n + 1;
  std::vector<int> first(static_cast<std::size_t>(e.n) + 1, -1);
  const auto& edges = t.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Vertex a2 = e.image[edges[i].u], b2 = e.image[edges[i].v];
    const Colour c = colour_of(e.n, a2, b2);
    if (first[c] < 0) {
      first[c] = static_cast<int>(i);
      continue;
    }
    const Edge& f = edges[first[c]];
    const Vertex a = e.image[f.u], b = e.image[f.v];
    ShiftCollision w;
    w.colour = c;
    w.first = f;
    w.second = edges[i];
    // Same colour means b2 - a2 = +-(b - a), so {a, b} + s = {a2, b2} for one s.
    w.shift = mod(b2 - a2, M) == mod(b - a, M) ? mod(a2 - a, M) : mod(a2 - b, M);
    w.shared = make_edge(static_cast<int>(a2), static_cast<int>(b2));
    return w;
  }
  return std::nullopt;
}

std::vector<Embedding> decompose_by_shifts(const Embedding& e, const Tree& t) {
  if (auto v = verify_rainbow(e, t); !v) {
    std::string msg = "not rainbow: " + v.diagnostic;
    if (auto w = find_shift_collision(e, t)) {
      msg += "; shifts 0 and " + std::to_string(w->shift) + " share edge " + edge_str(w->shared);
    }
    throw ValidationError(msg);
  }
  if (t.num_edges() != e.n) {
    throw ValidationError("a decomposition of K_" + std::to_string(2 * e.n + 1) + " needs a tree with " +
                          std::to_string(e.n) + " edges, got " + std::to_string(t.num_edges()));
  }
  std::vector<Embedding> out;
  out.reserve(static_cast<std::size_t>(2 * e.n + 1));
  for (std::int64_t s = 0; s < 2 * e.n + 1; ++s) out.push_back(shift_embedding(e, s));
  return out;
}

Verdict verify_decomposition(const std::vector<Embedding>& copies, const Tree& t) {
  if (copies.empty()) return Verdict::fail("no copies");
  const std::int64_t n = copies[0].n;
  const std::int64_t total = n * (2 * n + 1);
  std::vector<int> owner(static_cast<std::size_t>(total), -1);
  std::int64_t covered = 0;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    const auto& e = copies[i];
    if (e.n != n) return Verdict::fail("copy " + std::to_string(i) + " lives in a different K_{2n+1}");
    if (auto v = check_injective(e, t); !v) return Verdict::fail("copy " + std::to_string(i) + ": " + v.diagnostic);
    for (const auto& ed : t.edges()) {
      const Vertex a = e.image[ed.u], b = e.image[ed.v];
      const auto id = edge_index(n, a, b);
      if (owner[id] >= 0) {
        const Edge k = make_edge(static_cast<int>(a), static_cast<int>(b));
        return Verdict::fail("edge " + edge_str(k) + " lies in copies " + std::to_string(owner[id]) + " and " +
                             std::to_string(i));
      }
      owner[id] = static_cast<int>(i);
      ++covered;
    }
  }
  if (covered != total) {
    return Verdict::fail("copies cover " + std::to_string(covered) + " of " + std::to_string(total) + " edges");
  }
  return {};
}

// ---- certificates ----------------------------------------------------------------

std::string to_string(Producer p) {
  switch (p) {
    case Producer::Search: return "search";
    case Producer::CaseC: return "case_c";
    case Producer::Graceful: return "graceful";
  }
  return "?";
}

Producer producer_from_string(std::string_view s) {
  if (s == "search") return Producer::Search;
  if (s == "case_c") return Producer::CaseC;
  if (s == "graceful") return Producer::Graceful;
  throw ParseError("unknown producer '" + std::string(s) + "'");
}

Verdict verify_certificate(const Certificate& c) {
  if (c.base.n != c.n) return Verdict::fail("embedding n differs from certificate n");
  if (auto v = verify_rainbow(c.base, c.tree); !v) return v;
  if (c.tree.num_edges() != c.n) {
    return Verdict::fail("tree has " + std::to_string(c.tree.num_edges()) + " edges, expected " + std::to_string(c.n));
  }
  if (c.reductions.fixed_vertex) {
    int v = *c.reductions.fixed_vertex;
    if (v < 0 || v >= c.tree.size() || c.base.image[v] != 0) return Verdict::fail("fixed vertex is not mapped to 0");
  }
  return verify_decomposition(decompose_by_shifts(c.base, c.tree), c.tree);
}

namespace {

json to_json(const Certificate& c, bool with_hash) {
  json j;
  j["version"] = Certificate::kVersion;
  j["n"] = c.n;
  json edges = json::array();
  for (const auto& e : c.tree.edges()) edges.push_back(json::array({e.u, e.v}));
  j["tree_edges"] = std::move(edges);
  j["base_image"] = c.base.image;
  json red;
  red["fixed_vertex"] = c.reductions.fixed_vertex ? json(*c.reductions.fixed_vertex) : json(nullptr);
  red["reflection"] = c.reductions.reflection;
  j["reductions"] = std::move(red);
  j["producer"] = to_string(c.producer);
  j["status"] = c.verified ? "verified" : "failed";
  if (with_hash) j["hash"] = c.hash;
  return j;
}

}  // namespace

std::string canonical_json(const Certificate& c, bool with_hash) { return to_json(c, with_hash).dump(); }

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw InternalInvariantError("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string certificate_hash(const Certificate& c) { return sha256_hex(canonical_json(c, false)); }

Certificate make_certificate(const Tree& t, const Embedding& base, Producer producer, Reductions red) {
  Certificate c;
  c.n = base.n;
  c.tree = t;
  c.base = base;
  c.reductions = red;
  c.producer = producer;
  c.verified = static_cast<bool>(verify_certificate(c));
  c.hash = certificate_hash(c);
  return c;
}

std::string write_certificate(const Certificate& c) { return canonical_json(c, true) + "\n"; }

Certificate read_certificate(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
  }
  static const std::vector<std::string> keys{"base_image", "hash",   "n",           "producer",
                                             "reductions", "status", "tree_edges", "version"};
  if (!j.is_object()) throw ParseError("certificate must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ParseError("unknown certificate field '" + k + "'");
  }
  for (const auto& k : keys) {
    if (!j.contains(k)) throw ParseError("certificate field '" + k + "' is missing");
  }
  auto need = [](bool ok, const char* what) {
    if (!ok) throw ParseError(std::string("certificate field ") + what + " has the wrong type");
  };
  need(j["version"].is_number_integer(), "version");
  if (j["version"].get<int>() != Certificate::kVersion) throw ParseError("unsupported certificate version");
  need(j["n"].is_number_integer(), "n");
  need(j["tree_edges"].is_array(), "tree_edges");
  need(j["base_image"].is_array(), "base_image");
  need(j["reductions"].is_object(), "reductions");
  need(j["producer"].is_string(), "producer");
  need(j["status"].is_string(), "status");
  need(j["hash"].is_string(), "hash");

  Certificate c;
  c.n = j["n"].get<std::int64_t>();
  if (c.n < 1) throw ParseError("certificate n must be positive");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : j["tree_edges"]) {
    need(e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer(), "tree_edges");
    pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  try {
    c.tree = Tree::from_pairs(static_cast<int>(pairs.size()) + 1, pairs);
  } catch (const Error& e) {
    throw ParseError(std::string("certificate tree is invalid: ") + e.what());
  }
  c.base.n = c.n;
  for (const auto& v : j["base_image"]) {
    need(v.is_number_integer(), "base_image");
    c.base.image.push_back(v.get<Vertex>());
  }
  const auto& red = j["reductions"];
  need(red.size() == 2 && red.contains("fixed_vertex") && red.contains("reflection"), "reductions");
  need(red["reflection"].is_boolean(), "reductions.reflection");
  c.reductions.reflection = red["reflection"].get<bool>();
  if (!red["fixed_vertex"].is_null()) {
    need(red["fixed_vertex"].is_number_integer(), "reductions.fixed_vertex");
    c.reductions.fixed_vertex = red["fixed_vertex"].get<int>();
  }
  c.producer = producer_from_string(j["producer"].get<std::string>());
  const auto status = j["status"].get<std::string>();
  if (status != "verified" && status != "failed") throw ParseError("unknown status '" + status + "'");
  c.verified = status == "verified";
  c.hash = j["hash"].get<std::string>();
  if (certificate_hash(c) != c.hash) throw ParseError("hash mismatch");
  return c;
}

}  // namespace ringel
