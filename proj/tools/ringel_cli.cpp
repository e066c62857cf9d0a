#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ringel/cli.hpp"
#include "ringel/error.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ringel::ParameterError("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("RINGEL_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ringel::ParameterError(std::string("RINGEL_SEED is not an unsigned integer: ") + s);
    }
  }
  return 0;
}

int emit(const ringel::CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rainbow tree embeddings and cyclic decompositions of K_{2n+1}"};
  app.require_subcommand(1);

  std::string tree_file, cert_file, delta = "0.01";
  ringel::EmbedOptions eo;
  ringel::SwitcherOptions so;
  ringel::SweepOptions sw;
  std::optional<std::uint64_t> seed;

  auto* classify = app.add_subcommand("classify", "Case division witness for a tree");
  classify->add_option("tree", tree_file, "Tree file ('-' for stdin)")->required();
  classify->add_option("--delta", delta, "Case parameter, decimal or p/q");

  auto* embed = app.add_subcommand("embed", "Rainbow copy and decomposition certificate");
  embed->add_option("tree", tree_file, "Tree file ('-' for stdin)")->required();
  embed->add_option("--n", eo.n, "Colour count; must equal the number of edges");
  embed->add_option("--mode", eo.mode, "auto | search | case-c | graceful")
      ->check(CLI::IsMember({"auto", "search", "case-c", "graceful"}));
  embed->add_option("--strategy", eo.strategy, "auto | exhaustive | restart")
      ->check(CLI::IsMember({"auto", "exhaustive", "restart"}));
  embed->add_option("--seed", seed, "Seed for randomized restarts (default: RINGEL_SEED or 0)");
  embed->add_option("--delta", eo.delta, "Case parameter used by --mode auto");
  embed->add_option("--time-budget", eo.time_budget, "Seconds; 0 = unlimited");
  embed->add_option("--threads", eo.threads, "Restart workers; 0 = hardware concurrency");
  embed->add_option("--out", eo.out_path, "Write the certificate here and print a run report");
  embed->add_option("--dot", eo.dot_path, "Write a DOT drawing of the base copy");

  auto* decompose = app.add_subcommand("decompose", "List the 2n+1 shifted copies and check the cover");
  decompose->add_option("certificate", cert_file, "Certificate file ('-' for stdin)")->required();

  auto* verify = app.add_subcommand("verify", "Re-verify a certificate");
  verify->add_option("certificate", cert_file, "Certificate file ('-' for stdin)")->required();

  auto* switcher = app.add_subcommand("switcher", "Build and audit a path switcher");
  switcher->add_option("--n", so.n, "K_{2n+1}")->required();
  switcher->add_option("--x", so.x, "Start vertex")->required();
  switcher->add_option("--y", so.y, "End vertex")->required();
  switcher->add_option("--colors,--colours", so.colours, "Target colours c1,...,cl")->delimiter(',')->required();
  switcher->add_option("--forbid-vertices", so.forbidden_vertices, "Forbidden vertices")->delimiter(',');
  switcher->add_option("--forbid-colours", so.forbidden_colours, "Forbidden colours")->delimiter(',');
  switcher->add_flag("--multi", so.multi, "Use the 1-in-l chain even for two colours");
  switcher->add_option("--finish-k", so.finish_k, "Finishing path length to validate");

  auto* sweep = app.add_subcommand("sweep", "Decompose K_{2n+1} for every tree class up to a size");
  sweep->add_option("--max-edges", sw.max_edges, "Largest edge count")->required();
  sweep->add_option("--threads", sw.threads, "Workers; 0 = hardware concurrency");
  sweep->add_option("--producer", sw.producer, "search | graceful")->check(CLI::IsMember({"search", "graceful"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << ringel::error_json(ringel::ParameterError(e.what()));
    return 2;
  }

  try {
    if (*classify) return emit(ringel::cmd_classify(slurp(tree_file), delta));
    if (*embed) {
      eo.seed = seed ? *seed : default_seed();
      return emit(ringel::cmd_embed(slurp(tree_file), eo));
    }
    if (*decompose) return emit(ringel::cmd_decompose(slurp(cert_file)));
    if (*verify) return emit(ringel::cmd_verify(slurp(cert_file)));
    if (*switcher) return emit(ringel::cmd_switcher(so));
    if (*sweep) return emit(ringel::cmd_sweep(sw));
  } catch (const std::exception& e) {
    std::cerr << ringel::error_json(e);
    return 1;
  }
  return 1;
}
