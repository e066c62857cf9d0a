#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace ringel {

/// Hopcroft-Karp maximum matching. `adj[l]` lists right vertices in
/// [0, right) adjacent to left vertex l. Returns match_left (-1 = unmatched).
inline std::vector<int> max_bipartite_matching(int right, const std::vector<std::vector<int>>& adj) {
  const int left = static_cast<int>(adj.size());
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> ml(static_cast<std::size_t>(left), -1), mr(static_cast<std::size_t>(right), -1);
  std::vector<int> dist(static_cast<std::size_t>(left));

  auto bfs = [&] {
    std::queue<int> q;
    bool found = false;
    for (int l = 0; l < left; ++l) {
      if (ml[l] < 0) {
        dist[l] = 0;
        q.push(l);
      } else {
        dist[l] = kInf;
      }
    }
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        int l2 = mr[r];
        if (l2 < 0) {
          found = true;
        } else if (dist[l2] == kInf) {
          dist[l2] = dist[l] + 1;
          q.push(l2);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the layered graph.
  std::vector<std::size_t> it(static_cast<std::size_t>(left));
  auto dfs = [&](int root) {
    std::vector<int> stack{root};
    std::vector<int> via;  // right vertex taken from each stacked left vertex
    while (!stack.empty()) {
      int l = stack.back();
      if (it[l] == adj[l].size()) {
        dist[l] = kInf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      int r = adj[l][it[l]++];
      int l2 = mr[r];
      if (l2 < 0) {
        via.push_back(r);
        for (std::size_t i = 0; i < stack.size(); ++i) {
          ml[stack[i]] = via[i];
          mr[via[i]] = stack[i];
        }
        return true;
      }
      if (dist[l2] == dist[l] + 1) {
        via.push_back(r);
        stack.push_back(l2);
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int l = 0; l < left; ++l) {
      if (ml[l] < 0) dfs(l);
    }
  }
  return ml;
}

inline int matching_size(const std::vector<int>& match_left) {
  int s = 0;
  for (int r : match_left) s += r >= 0;
  return s;
}

}  // namespace ringel
