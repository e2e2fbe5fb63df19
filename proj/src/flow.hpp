#pragma once

// Dinic max-flow on small integer networks (Monroe assignments and load witnesses).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace seatlab::detail {

class FlowNetwork {
 public:
  static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max() / 4;

  explicit FlowNetwork(int nodes) : graph_(nodes), level_(nodes), next_(nodes) {}

  /// Returns the index of the forward edge.
  int add_edge(int from, int to, std::int64_t capacity) {
    edges_.push_back({to, capacity});
    graph_[from].push_back(static_cast<int>(edges_.size()) - 1);
    edges_.push_back({from, 0});
    graph_[to].push_back(static_cast<int>(edges_.size()) - 1);
    return static_cast<int>(edges_.size()) - 2;
  }

  std::int64_t max_flow(int source, int sink) {
    std::int64_t total = 0;
    while (bfs(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (std::int64_t pushed = dfs(source, sink, kInfinite)) total += pushed;
    }
    return total;
  }

  /// Flow currently routed through a forward edge.
  std::int64_t flow(int edge) const { return edges_[edge ^ 1].capacity; }

 private:
  struct Edge {
    int to;
    std::int64_t capacity;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int e : graph_[u]) {
        if (edges_[e].capacity > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          queue.push(edges_[e].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  std::int64_t dfs(int u, int sink, std::int64_t limit) {
    if (u == sink) return limit;
    for (int& i = next_[u]; i < static_cast<int>(graph_[u].size()); ++i) {
      const int e = graph_[u][i];
      Edge& edge = edges_[e];
      if (edge.capacity <= 0 || level_[edge.to] != level_[u] + 1) continue;
      if (std::int64_t pushed = dfs(edge.to, sink, std::min(limit, edge.capacity))) {
        edge.capacity -= pushed;
        edges_[e ^ 1].capacity += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> graph_;
  std::vector<int> level_;
  std::vector<int> next_;
};

}  // namespace seatlab::detail
