#include "ringel/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ringel/case_c.hpp"
#include "ringel/error.hpp"
#include "ringel/gadgets.hpp"
#include "ringel/search.hpp"

namespace ringel {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << "s";
  return os.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot write " + path);
  f << bytes;
}

json witness_json(const CaseWitness& w) {
  json j;
  j["case"] = to_string(w.which);
  j["delta"] = w.delta.str();
  const auto& th = w.thresholds;
  j["thresholds"] = {{"n", th.n},
                     {"cluster_leaves", th.cluster_leaves},
                     {"pruned_max", th.pruned_max},
                     {"path_length", th.path_length},
                     {"path_count", th.path_count},
                     {"leaf_count", th.leaf_count}};
  switch (w.which) {
    case TreeCase::A: j["leaves"] = w.leaves; break;
    case TreeCase::B: j["paths"] = w.paths; break;
    case TreeCase::C:
      j["pruned_vertices"] = w.pruned_vertices;
      j["centres"] = w.centres;
      j["centre_leaf_counts"] = w.centre_leaf_counts;
      break;
  }
  return j;
}

SearchConfig search_config(const Tree& t, const EmbedOptions& opt) {
  SearchConfig cfg;
  std::string s = opt.strategy;
  if (s == "auto") s = t.num_edges() <= 12 ? "exhaustive" : "restart";
  if (s == "exhaustive") {
    cfg.strategy = Strategy::Exhaustive;
  } else if (s == "restart") {
    cfg.strategy = Strategy::RandomRestart;
  } else {
    throw ParameterError("unknown strategy '" + opt.strategy + "'");
  }
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  cfg.time_budget = opt.time_budget;
  return cfg;
}

EmbedOutcome via_search(const Tree& t, std::int64_t n, const EmbedOptions& opt) {
  auto r = find_rainbow_embedding(t, n, search_config(t, opt));
  if (r.status != SearchStatus::Found) {
    throw ConstructionFailure(-1, "rainbow search ended with status " + to_string(r.status));
  }
  EmbedOutcome o;
  o.cert = make_certificate(t, r.embedding, Producer::Search, Reductions{r.anchor, r.reflection});
  o.route = "search";
  return o;
}

EmbedOutcome via_graceful(const Tree& t, std::int64_t n, const EmbedOptions& opt) {
  auto r = find_graceful_labelling(t, search_config(t, opt));
  if (r.status != SearchStatus::Found) {
    throw ConstructionFailure(-1, "graceful search ended with status " + to_string(r.status));
  }
  EmbedOutcome o;
  o.cert = make_certificate(t, graceful_to_embedding(t, r.labelling, n), Producer::Graceful, Reductions{});
  o.route = "graceful";
  return o;
}

EmbedOutcome via_case_c(const Tree& t) {
  EmbedOutcome o;
  o.cert = make_certificate(t, embed_tree_case_c(t), Producer::CaseC, Reductions{});
  o.route = "case_c";
  return o;
}

}  // namespace

EmbedOutcome embed_tree(const Tree& t, const EmbedOptions& opt) {
  const std::int64_t n = opt.n.value_or(t.num_edges());
  if (n != t.num_edges()) {
    throw ParameterError("--n must equal the number of tree edges (" + std::to_string(t.num_edges()) + ")");
  }
  if (n < 1) throw PreconditionError("the tree needs at least one edge");
  EmbedOutcome o;
  if (opt.mode == "search") {
    o = via_search(t, n, opt);
  } else if (opt.mode == "graceful") {
    o = via_graceful(t, n, opt);
  } else if (opt.mode == "case-c") {
    o = via_case_c(t);
  } else if (opt.mode == "auto") {
    std::vector<std::string> notes;
    bool case_c = false;
    try {
      auto w = classify_case(t, Rational::parse(opt.delta));
      notes.push_back("classified as case " + to_string(w.which));
      case_c = w.which == TreeCase::C;
    } catch (const Error& e) {
      notes.push_back(std::string("classification unavailable (") + e.kind() + ")");
    }
    if (case_c) {
      try {
        o = via_case_c(t);
        if (!o.cert.verified) throw InternalInvariantError("case C output failed verification");
      } catch (const Error& e) {
        notes.push_back(std::string("case C embedder failed (") + e.kind() + "), falling back to search");
        o = via_search(t, n, opt);
      }
    } else {
      o = via_search(t, n, opt);
    }
    o.notes.insert(o.notes.begin(), notes.begin(), notes.end());
  } else {
    throw ParameterError("unknown mode '" + opt.mode + "'");
  }
  if (!o.cert.verified) {
    throw InternalInvariantError("certificate from " + o.route + " failed verification: " +
                                 verify_certificate(o.cert).diagnostic);
  }
  return o;
}

std::string embedding_dot(const Certificate& c) {
  const std::int64_t M = 2 * c.n + 1;
  std::ostringstream os;
  os << "graph K" << M << " {\n  layout=neato;\n  node [shape=circle, fontsize=10];\n";
  const double pi = std::acos(-1.0);
  os.setf(std::ios::fixed);
  os.precision(3);
  for (std::int64_t v = 0; v < M; ++v) {
    const double a = pi / 2 - 2 * pi * static_cast<double>(v) / static_cast<double>(M);
    os << "  " << v << " [pos=\"" << 3 * std::cos(a) << "," << 3 * std::sin(a) << "!\"];\n";
  }
  for (const auto& e : c.tree.edges()) {
    const Vertex a = c.base.image[e.u], b = c.base.image[e.v];
    os << "  " << a << " -- " << b << " [label=\"" << colour_of(c.n, a, b) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

CommandResult cmd_classify(std::string_view tree_text, std::string_view delta) {
  const Tree t = parse_tree_text(tree_text);
  const auto w = classify_case(t, Rational::parse(delta));
  const auto chk = check_witness(t, w);
  json j = witness_json(w);
  j["command"] = "classify";
  j["valid"] = chk.ok;
  if (!chk.ok) j["diagnostic"] = chk.reason;
  CommandResult r;
  r.out = j.dump() + "\n";
  r.err = "case " + to_string(w.which) + " at delta " + w.delta.str() + "\n";
  r.exit_code = chk.ok ? 0 : 1;
  return r;
}

CommandResult cmd_embed(std::string_view tree_text, const EmbedOptions& opt) {
  const auto t0 = Clock::now();
  const Tree t = parse_tree_text(tree_text);
  const auto o = embed_tree(t, opt);
  CommandResult r;
  const std::string cert = write_certificate(o.cert);
  if (opt.dot_path) write_file(*opt.dot_path, embedding_dot(o.cert));
  if (opt.out_path) {
    write_file(*opt.out_path, cert);
    json rep;
    rep["command"] = "embed";
    rep["input_digest"] = sha256_hex(to_tree_text(t));
    rep["config"] = {{"n", o.cert.n},       {"mode", opt.mode},   {"strategy", opt.strategy},
                     {"seed", opt.seed},    {"delta", opt.delta}};
    rep["outcome"] = o.cert.verified ? "verified" : "failed";
    rep["route"] = o.route;
    rep["notes"] = o.notes;
    rep["certificate_path"] = *opt.out_path;
    rep["certificate_hash"] = o.cert.hash;
    if (opt.dot_path) rep["dot_path"] = *opt.dot_path;
    r.out = rep.dump() + "\n";
  } else {
    r.out = cert;
  }
  for (const auto& note : o.notes) r.err += note + "\n";
  r.err += "embed via " + o.route + " in " + fmt_seconds(seconds_since(t0)) + "\n";
  r.exit_code = o.cert.verified ? 0 : 1;
  return r;
}

CommandResult cmd_decompose(std::string_view certificate_text) {
  const Certificate c = read_certificate(certificate_text);
  CommandResult r;
  json j;
  j["command"] = "decompose";
  j["n"] = c.n;
  std::vector<Embedding> copies;
  try {
    copies = decompose_by_shifts(c.base, c.tree);
  } catch (const ValidationError& e) {
    j["ok"] = false;
    j["diagnostic"] = e.what();
    r.out = j.dump() + "\n";
    r.exit_code = 1;
    return r;
  }
  const auto v = verify_decomposition(copies, c.tree);
  json list = json::array();
  for (const auto& e : copies) list.push_back(e.image);
  j["copies"] = std::move(list);
  j["copy_count"] = copies.size();
  j["edge_count"] = c.n * (2 * c.n + 1);
  j["ok"] = v.ok;
  j["verdict"] = v.ok ? "exact cover" : v.diagnostic;
  r.out = j.dump() + "\n";
  r.exit_code = v.ok ? 0 : 1;
  return r;
}

CommandResult cmd_verify(std::string_view certificate_text) {
  const Certificate c = read_certificate(certificate_text);
  const auto v = verify_certificate(c);
  CommandResult r;
  json j;
  j["command"] = "verify";
  j["hash"] = c.hash;
  j["stored_status"] = c.verified ? "verified" : "failed";
  j["recomputed_status"] = v.ok ? "verified" : "failed";
  const bool agree = v.ok == c.verified;
  j["ok"] = v.ok && agree;
  if (!v.ok) j["diagnostic"] = v.diagnostic;
  if (!agree) j["mismatch"] = "stored status differs from recomputation";
  r.out = j.dump() + "\n";
  r.exit_code = v.ok && agree ? 0 : 1;
  return r;
}

CommandResult cmd_switcher(const SwitcherOptions& opt) {
  if (opt.finish_k) validate_path_length(*opt.finish_k);
  const std::int64_t M = 2 * opt.n + 1;
  if (opt.n < 1) throw ParameterError("--n must be positive");
  for (auto v : {opt.x, opt.y}) {
    if (v < 0 || v >= M) throw ParameterError("endpoint " + std::to_string(v) + " is outside Z_" + std::to_string(M));
  }
  json j;
  j["command"] = "switcher";
  j["n"] = opt.n;
  j["x"] = opt.x;
  j["y"] = opt.y;
  j["colours"] = opt.colours;
  CommandResult r;
  auto path_json = [&](const std::vector<Vertex>& p) {
    return json{{"vertices", p}, {"colours", path_colours(opt.n, p)}};
  };
  if (opt.colours.size() == 2 && !opt.multi) {
    auto s = build_two_switcher(opt.n, opt.x, opt.y, opt.colours[0], opt.colours[1], opt.forbidden_vertices,
                                opt.forbidden_colours);
    auto v = verify_two_switcher(s, opt.forbidden_vertices, opt.forbidden_colours);
    j["kind"] = "1-in-2";
    j["k"] = s.k;
    j["d"] = s.d;
    j["shift"] = s.shift;
    j["shared"] = s.shared;
    j["paths"] = json::array({path_json(s.p), path_json(s.q)});
    j["audit"] = {{"ok", v.ok}, {"diagnostic", v.reason}};
    r.exit_code = v.ok ? 0 : 1;
  } else {
    auto s = build_multi_switcher(opt.n, opt.x, opt.y, opt.colours, opt.forbidden_vertices, opt.forbidden_colours);
    auto v = verify_multi_switcher(s, opt.forbidden_vertices, opt.forbidden_colours);
    j["kind"] = "1-in-" + std::to_string(s.size());
    j["links"] = s.links;
    j["pivots"] = s.pivots;
    j["mids"] = s.mids;
    j["shared"] = s.shared;
    j["shared_count"] = s.shared.size();
    j["vertex_count"] = s.vertex_set.size();
    j["path_length"] = s.path_length();
    json paths = json::array();
    for (Colour c : s.targets) {
      auto p = path_json(s.select(c));
      p["colour"] = c;
      paths.push_back(std::move(p));
    }
    j["paths"] = std::move(paths);
    j["audit"] = {{"ok", v.ok}, {"diagnostic", v.reason}};
    r.exit_code = v.ok ? 0 : 1;
  }
  r.out = j.dump() + "\n";
  return r;
}

CommandResult cmd_sweep(const SweepOptions& opt) {
  if (opt.max_edges < 1) throw ParameterError("--max-edges must be at least 1");
  if (opt.producer != "search" && opt.producer != "graceful") {
    throw ParameterError("unknown sweep producer '" + opt.producer + "'");
  }
  const auto t0 = Clock::now();
  std::vector<Tree> trees;
  std::map<int, int> per_size;
  for (int m = 2; m <= opt.max_edges + 1; ++m) {
    auto cls = enumerate_trees(m);
    per_size[m - 1] = static_cast<int>(cls.size());
    for (auto& t : cls) trees.push_back(std::move(t));
  }
  struct Row {
    bool ok = false;
    std::string hash;
    std::string error;
  };
  std::vector<Row> rows(trees.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trees.size()) return;
      try {
        EmbedOptions eo;
        eo.mode = opt.producer;
        eo.strategy = "exhaustive";
        eo.threads = 1;
        auto o = embed_tree(trees[i], eo);
        rows[i].ok = o.cert.verified;
        rows[i].hash = o.cert.hash;
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  int w = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
  w = std::max(1, w);
  std::vector<std::thread> pool;
  for (int i = 1; i < w; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::map<int, int> decomposed;
  json failures = json::array();
  std::string digest_input;
  bool all = true;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (rows[i].ok) {
      ++decomposed[trees[i].num_edges()];
    } else {
      all = false;
      failures.push_back({{"tree", to_tree_text(trees[i])}, {"error", rows[i].error}});
    }
    digest_input += rows[i].hash + "\n";
  }
  json table = json::array();
  for (auto [e, cnt] : per_size) table.push_back({{"edges", e}, {"classes", cnt}, {"decomposed", decomposed[e]}});
  json j;
  j["command"] = "sweep";
  j["max_edges"] = opt.max_edges;
  j["table"] = std::move(table);
  j["classes"] = trees.size();
  j["producers"] = {{opt.producer, trees.size() - failures.size()}};
  j["failures"] = std::move(failures);
  j["all_classes_decomposed"] = all;
  j["summary"] = std::string("all classes decomposed: ") + (all ? "yes" : "no");
  j["certificates_digest"] = sha256_hex(digest_input);
  CommandResult r;
  r.out = j.dump() + "\n";
  r.err = "sweep over " + std::to_string(trees.size()) + " classes in " + fmt_seconds(seconds_since(t0)) + "\n";
  r.exit_code = all ? 0 : 1;
  return r;
}

std::string error_json(const std::exception& e) {
  json j;
  if (auto* re = dynamic_cast<const Error*>(&e)) {
    j["error"] = re->kind();
  } else {
    j["error"] = "internal";
  }
  j["message"] = e.what();
  return j.dump() + "\n";
}

}  // namespace ringel
