#include "ringel/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <functional>
#include <optional>
#include <thread>

#include "ringel/error.hpp"
#include "ringel/rng.hpp"

namespace ringel {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::Timeout: return "timeout";
  }
  return "?";
}

std::vector<int> search_order(const Tree& t) {
  const int m = t.size();
  if (m == 0) return {};
  std::vector<int> order{centroid(t)};
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  seen[order[0]] = 1;
  for (std::size_t h = 0; h < order.size(); ++h) {
    std::vector<int> kids;
    for (int w : t.neighbours(order[h])) {
      if (!seen[w]) kids.push_back(w);
    }
    std::stable_sort(kids.begin(), kids.end(), [&](int a, int b) { return t.degree(a) > t.degree(b); });
    for (int w : kids) {
      seen[w] = 1;
      order.push_back(w);
    }
  }
  return order;
}

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

 private:
  std::vector<std::uint64_t> w_;
};

using Clock = std::chrono::steady_clock;

// Backtracking over images of the tree vertices in a fixed order. In rainbow
// mode images live in Z_{2n+1} and edge colours are ND-colours; in graceful
// mode images live in [0, n] and colours are plain differences.
class Engine {
 public:
  Engine(const Tree& t, std::int64_t n, bool graceful, std::vector<int> order)
      : n_(n),
        graceful_(graceful),
        space_(graceful ? n + 1 : 2 * n + 1),
        order_(std::move(order)),
        parent_(static_cast<std::size_t>(t.size()), -1),
        img_(static_cast<std::size_t>(t.size()), -1),
        vused_(static_cast<std::size_t>(space_)),
        cused_(static_cast<std::size_t>(n + 1)) {
    std::vector<char> placed(static_cast<std::size_t>(t.size()), 0);
    for (int v : order_) {
      for (int w : t.neighbours(v)) {
        if (placed[w]) parent_[v] = w;
      }
      placed[v] = 1;
    }
  }

  std::mt19937_64* rng = nullptr;
  std::uint64_t node_limit = UINT64_MAX;
  std::optional<Clock::time_point> deadline;
  std::function<bool()> cancelled;
  bool reflection = false;
  // Returns true to stop the search.
  std::function<bool(const std::vector<Vertex>&)> on_complete;

  std::uint64_t nodes = 0;
  bool aborted = false;

  // Runs with order_[0] placed at `root`; true when on_complete asked to stop.
  bool run(Vertex root) {
    img_[order_[0]] = root;
    vused_.set(static_cast<std::size_t>(root));
    bool stop = dfs(1);
    vused_.reset(static_cast<std::size_t>(root));
    img_[order_[0]] = -1;
    return stop;
  }

 private:
  bool dfs(std::size_t pos) {
    if (pos == order_.size()) return on_complete(img_);
    if (++nodes > node_limit) return abort();
    if ((nodes & 4095) == 0) {
      if (deadline && Clock::now() > *deadline) return abort();
      if (cancelled && cancelled()) return abort();
    }
    const int v = order_[pos];
    const Vertex a = img_[parent_[v]];
    std::int64_t offset = 0;
    bool minus_first = false;
    if (rng) {
      offset = static_cast<std::int64_t>((*rng)() % static_cast<std::uint64_t>(n_));
      minus_first = ((*rng)() & 1U) != 0;
    }
    for (std::int64_t j = 0; j < n_; ++j) {
      const std::int64_t c = (j + offset) % n_ + 1;
      if (cused_.test(static_cast<std::size_t>(c))) continue;
      for (int s = 0; s < 2; ++s) {
        const bool minus = (s == 0) == minus_first;
        Vertex b;
        if (graceful_) {
          b = minus ? a - c : a + c;
          if (b < 0 || b > n_) continue;
        } else {
          b = mod(minus ? a - c : a + c, space_);
          if (reflection && pos == 1 && b > n_) continue;
        }
        if (vused_.test(static_cast<std::size_t>(b))) continue;
        img_[v] = b;
        vused_.set(static_cast<std::size_t>(b));
        cused_.set(static_cast<std::size_t>(c));
        bool stop = dfs(pos + 1);
        cused_.reset(static_cast<std::size_t>(c));
        vused_.reset(static_cast<std::size_t>(b));
        img_[v] = -1;
        if (stop) return true;
      }
    }
    return false;
  }

  bool abort() {
    aborted = true;
    return true;
  }

  std::int64_t n_;
  bool graceful_;
  std::int64_t space_;
  std::vector<int> order_;
  std::vector<int> parent_;
  std::vector<Vertex> img_;
  Bits vused_;
  Bits cused_;
};

void check_size(const Tree& t, std::int64_t n) {
  if (t.size() < 1) throw PreconditionError("empty tree");
  if (n < 1) throw ParameterError("n must be positive");
  if (t.num_edges() > n) {
    throw PreconditionError("a tree with " + std::to_string(t.num_edges()) + " edges has no rainbow copy in K_" +
                            std::to_string(2 * n + 1));
  }
}

std::optional<Clock::time_point> deadline_of(const SearchConfig& cfg) {
  if (cfg.time_budget <= 0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.time_budget));
}

int worker_count(const SearchConfig& cfg) {
  int w = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min(w, cfg.restarts));
}

// Runs restarts 0..R-1 in parallel; the result of the lowest successful index wins.
template <class Attempt>
int run_restarts(const SearchConfig& cfg, Attempt attempt, bool& timed_out) {
  std::atomic<int> next{0};
  std::atomic<int> best{INT_MAX};
  std::atomic<bool> late{false};
  auto deadline = deadline_of(cfg);
  auto work = [&] {
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= cfg.restarts || idx > best.load()) return;
      if (deadline && Clock::now() > *deadline) {
        late = true;
        return;
      }
      auto cancelled = [&, idx] { return best.load() < idx || (deadline && Clock::now() > *deadline); };
      if (attempt(idx, cancelled, deadline)) {
        int cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const int w = worker_count(cfg);
  for (int i = 1; i < w; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  timed_out = late.load();
  return best.load() == INT_MAX ? -1 : best.load();
}

}  // namespace

SearchResult find_rainbow_embedding(const Tree& t, std::int64_t n, const SearchConfig& cfg) {
  check_size(t, n);
  SearchResult res;
  const auto order = search_order(t);
  res.anchor = order[0];
  res.embedding.n = n;
  res.reflection = cfg.reflection && t.size() >= 2;
  if (t.size() == 1) {
    res.status = SearchStatus::Found;
    res.embedding.image = {0};
    return res;
  }

  if (cfg.strategy == Strategy::Exhaustive) {
    Engine e(t, n, false, order);
    e.reflection = res.reflection;
    e.deadline = deadline_of(cfg);
    e.on_complete = [&](const std::vector<Vertex>& img) {
      res.embedding.image = img;
      return true;
    };
    bool stop = e.run(0);
    res.nodes = e.nodes;
    res.status = e.aborted ? SearchStatus::Timeout : stop ? SearchStatus::Found : SearchStatus::Exhausted;
    if (res.status != SearchStatus::Found) res.embedding.image.clear();
    return res;
  }

  std::vector<std::vector<Vertex>> found(static_cast<std::size_t>(cfg.restarts));
  std::vector<std::uint64_t> nodes(static_cast<std::size_t>(cfg.restarts), 0);
  bool timed_out = false;
  int win = run_restarts(
      cfg,
      [&](int idx, const std::function<bool()>& cancelled, std::optional<Clock::time_point> deadline) {
        auto rng = stream_for(cfg.seed, static_cast<std::uint64_t>(idx));
        Engine e(t, n, false, order);
        e.rng = &rng;
        e.reflection = res.reflection;
        e.node_limit = cfg.restart_nodes;
        e.deadline = deadline;
        e.cancelled = cancelled;
        e.on_complete = [&](const std::vector<Vertex>& img) {
          found[idx] = img;
          return true;
        };
        bool ok = e.run(0) && !e.aborted;
        nodes[idx] = e.nodes;
        return ok;
      },
      timed_out);
  for (auto x : nodes) res.nodes += x;
  if (win >= 0) {
    res.status = SearchStatus::Found;
    res.restart = win;
    res.embedding.image = found[win];
  } else {
    res.status = SearchStatus::Timeout;
  }
  return res;
}

std::vector<Embedding> enumerate_rainbow_embeddings(const Tree& t, std::int64_t n, int anchor, bool reflection) {
  check_size(t, n);
  auto order = search_order(t);
  if (anchor >= 0) {
    if (anchor >= t.size()) throw ParameterError("anchor out of range");
    // Re-root the BFS order at the anchor, keeping the sibling heuristic.
    std::vector<int> o{anchor};
    std::vector<char> seen(static_cast<std::size_t>(t.size()), 0);
    seen[anchor] = 1;
    for (std::size_t h = 0; h < o.size(); ++h) {
      std::vector<int> kids;
      for (int w : t.neighbours(o[h])) {
        if (!seen[w]) kids.push_back(w);
      }
      std::stable_sort(kids.begin(), kids.end(), [&](int a, int b) { return t.degree(a) > t.degree(b); });
      for (int w : kids) {
        seen[w] = 1;
        o.push_back(w);
      }
    }
    order = std::move(o);
  }
  std::vector<Embedding> out;
  if (t.size() == 1) {
    out.push_back({n, {0}});
    return out;
  }
  Engine e(t, n, false, order);
  e.reflection = reflection;
  e.on_complete = [&](const std::vector<Vertex>& img) {
    out.push_back({n, img});
    return false;
  };
  e.run(0);
  return out;
}

bool is_graceful(const Tree& t, const GracefulLabelling& g) {
  const std::int64_t n = t.num_edges();
  if (static_cast<int>(g.label.size()) != t.size()) return false;
  std::vector<char> seen_label(static_cast<std::size_t>(n) + 1, 0), seen_diff(seen_label);
  for (auto f : g.label) {
    if (f < 0 || f > n || seen_label[f]) return false;
    seen_label[f] = 1;
  }
  for (const auto& e : t.edges()) {
    auto d = std::abs(g.label[e.u] - g.label[e.v]);
    if (d < 1 || d > n || seen_diff[d]) return false;
    seen_diff[d] = 1;
  }
  return true;
}

GracefulResult find_graceful_labelling(const Tree& t, const SearchConfig& cfg) {
  if (t.size() < 1) throw PreconditionError("empty tree");
  GracefulResult res;
  const std::int64_t n = t.num_edges();
  if (n == 0) {
    res.status = SearchStatus::Found;
    res.labelling.label = {0};
    return res;
  }
  const auto order = search_order(t);
  // Complementing f -> n - f preserves gracefulness, so the root label can stay in [0, n/2].
  const std::int64_t root_max = cfg.reflection ? n / 2 : n;
  auto to_labelling = [](const std::vector<Vertex>& img) {
    return GracefulLabelling{std::vector<std::int64_t>(img.begin(), img.end())};
  };

  if (cfg.strategy == Strategy::Exhaustive) {
    Engine e(t, n, true, order);
    e.deadline = deadline_of(cfg);
    e.on_complete = [&](const std::vector<Vertex>& img) {
      res.labelling = to_labelling(img);
      return true;
    };
    bool stop = false;
    for (std::int64_t r = 0; r <= root_max && !stop; ++r) stop = e.run(r);
    res.nodes = e.nodes;
    res.status = e.aborted ? SearchStatus::Timeout : stop ? SearchStatus::Found : SearchStatus::Exhausted;
    if (res.status != SearchStatus::Found) res.labelling.label.clear();
    return res;
  }

  std::vector<GracefulLabelling> found(static_cast<std::size_t>(cfg.restarts));
  std::vector<std::uint64_t> nodes(static_cast<std::size_t>(cfg.restarts), 0);
  bool timed_out = false;
  int win = run_restarts(
      cfg,
      [&](int idx, const std::function<bool()>& cancelled, std::optional<Clock::time_point> deadline) {
        auto rng = stream_for(cfg.seed, static_cast<std::uint64_t>(idx));
        Engine e(t, n, true, order);
        e.rng = &rng;
        e.node_limit = cfg.restart_nodes;
        e.deadline = deadline;
        e.cancelled = cancelled;
        e.on_complete = [&](const std::vector<Vertex>& img) {
          found[idx] = to_labelling(img);
          return true;
        };
        Vertex root = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(root_max + 1));
        bool ok = e.run(root) && !e.aborted;
        nodes[idx] = e.nodes;
        return ok;
      },
      timed_out);
  for (auto x : nodes) res.nodes += x;
  if (win >= 0) {
    res.status = SearchStatus::Found;
    res.labelling = found[win];
  } else {
    res.status = SearchStatus::Timeout;
  }
  return res;
}

Embedding graceful_to_embedding(const Tree& t, const GracefulLabelling& g, std::int64_t n) {
  if (n != t.num_edges()) {
    throw ValidationError("graceful labelling of a " + std::to_string(t.num_edges()) + "-edge tree needs n = " +
                          std::to_string(t.num_edges()));
  }
  if (!is_graceful(t, g)) throw ValidationError("labelling is not graceful");
  return Embedding{n, std::vector<Vertex>(g.label.begin(), g.label.end())};
}

}  // namespace ringel
