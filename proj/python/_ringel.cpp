#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ringel/certify.hpp"
#include "ringel/cli.hpp"
#include "ringel/error.hpp"
#include "ringel/ndcolour.hpp"
#include "ringel/search.hpp"
#include "ringel/tree.hpp"

namespace py = pybind11;
using namespace ringel;

namespace {

std::vector<std::pair<int, int>> edge_pairs(const Tree& t) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : t.edges()) out.emplace_back(e.u, e.v);
  return out;
}

Tree tree_from(int m, const std::vector<std::pair<int, int>>& edges) { return Tree::from_pairs(m, edges); }

// Commands report failures through exit codes; the JSON text is returned either way.
py::tuple run(const CommandResult& r) { return py::make_tuple(r.exit_code, r.out); }

}  // namespace

PYBIND11_MODULE(_ringel, m) {
  static py::exception<Error> base(m, "RingelError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(base, (std::string(e.kind()) + ": " + e.what()).c_str());
    }
  });

  m.def("colour_of", &colour_of, py::arg("n"), py::arg("i"), py::arg("j"));
  m.def("verify_two_factorization", py::overload_cast<std::int64_t>(&verify_two_factorization), py::arg("n"));

  m.def("parse_tree", [](const std::string& text) {
    auto t = parse_tree_text(text);
    return py::make_tuple(t.size(), edge_pairs(t));
  });
  m.def("canonical_form", [](int size, const std::vector<std::pair<int, int>>& edges) {
    return canonical_form(tree_from(size, edges));
  });
  m.def("enumerate_trees", [](int size) {
    std::vector<std::vector<std::pair<int, int>>> out;
    for (const auto& t : enumerate_trees(size)) out.push_back(edge_pairs(t));
    return out;
  });

  m.def(
      "rainbow_embedding",
      [](int size, const std::vector<std::pair<int, int>>& edges, std::int64_t n) -> py::object {
        auto r = find_rainbow_embedding(tree_from(size, edges), n);
        if (r.status != SearchStatus::Found) return py::none();
        return py::cast(r.embedding.image);
      },
      py::arg("size"), py::arg("edges"), py::arg("n"));
  m.def(
      "graceful_labelling",
      [](int size, const std::vector<std::pair<int, int>>& edges) -> py::object {
        auto r = find_graceful_labelling(tree_from(size, edges));
        if (r.status != SearchStatus::Found) return py::none();
        return py::cast(r.labelling.label);
      },
      py::arg("size"), py::arg("edges"));
  m.def(
      "verify_rainbow",
      [](int size, const std::vector<std::pair<int, int>>& edges, std::int64_t n, const std::vector<Vertex>& image) {
        auto v = verify_rainbow(Embedding{n, image}, tree_from(size, edges));
        return py::make_tuple(v.ok, v.diagnostic);
      },
      py::arg("size"), py::arg("edges"), py::arg("n"), py::arg("image"));

  m.def("cmd_classify", [](const std::string& text, const std::string& delta) { return run(cmd_classify(text, delta)); },
        py::arg("tree_text"), py::arg("delta") = "0.01");
  m.def(
      "cmd_embed",
      [](const std::string& text, const std::string& mode, const std::string& strategy, std::uint64_t seed,
         int threads) {
        EmbedOptions o;
        o.mode = mode;
        o.strategy = strategy;
        o.seed = seed;
        o.threads = threads;
        return run(cmd_embed(text, o));
      },
      py::arg("tree_text"), py::arg("mode") = "auto", py::arg("strategy") = "auto", py::arg("seed") = 0,
      py::arg("threads") = 0);
  m.def("cmd_decompose", [](const std::string& cert) { return run(cmd_decompose(cert)); });
  m.def("cmd_verify", [](const std::string& cert) { return run(cmd_verify(cert)); });
  m.def(
      "cmd_sweep",
      [](int max_edges, const std::string& producer, int threads) {
        SweepOptions o;
        o.max_edges = max_edges;
        o.producer = producer;
        o.threads = threads;
        return run(cmd_sweep(o));
      },
      py::arg("max_edges"), py::arg("producer") = "search", py::arg("threads") = 0);
}
