#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringel/certify.hpp"
#include "ringel/tree.hpp"

namespace ringel {

/// Output of a command: JSON on `out`, logs and error JSON on `err`.
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

struct EmbedOptions {
  std::optional<std::int64_t> n;     // defaults to e(t); must equal it
  std::string mode = "auto";         // auto | search | case-c | graceful
  std::string strategy = "auto";     // auto | exhaustive | restart
  std::uint64_t seed = 0;
  std::string delta = "0.01";
  double time_budget = 0;
  int threads = 0;
  std::optional<std::string> out_path;
  std::optional<std::string> dot_path;
};

/// Certificate for t plus the route taken ("search", "case_c", ...).
struct EmbedOutcome {
  Certificate cert;
  std::string route;
  std::vector<std::string> notes;
};
EmbedOutcome embed_tree(const Tree& t, const EmbedOptions& opt);

/// Circular-layout DOT drawing of the base copy inside K_{2n+1}.
std::string embedding_dot(const Certificate& c);

CommandResult cmd_classify(std::string_view tree_text, std::string_view delta);
CommandResult cmd_embed(std::string_view tree_text, const EmbedOptions& opt);
CommandResult cmd_decompose(std::string_view certificate_text);
CommandResult cmd_verify(std::string_view certificate_text);

struct SwitcherOptions {
  std::int64_t n = 0;
  std::int64_t x = 0, y = 0;
  std::vector<std::int64_t> colours;
  std::vector<std::int64_t> forbidden_vertices;
  std::vector<std::int64_t> forbidden_colours;
  bool multi = false;                      // force the 1-in-l construction for l = 2
  std::optional<std::int64_t> finish_k;    // checked by validate_path_length
};
CommandResult cmd_switcher(const SwitcherOptions& opt);

struct SweepOptions {
  int max_edges = 8;
  int threads = 0;
  std::string producer = "search";  // search | graceful
};
CommandResult cmd_sweep(const SweepOptions& opt);

/// {"error": kind, "message": ...} for an exception escaping a command.
std::string error_json(const std::exception& e);

}  // namespace ringel
