#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace pathpair::detail {

// Dinic's algorithm on a small dense-ish network. Arcs are scanned in
// insertion order, so the resulting flow is deterministic.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t n) : adj_(n), level_(n), cursor_(n) {}

  // Returns the arc index for flow() lookups.
  std::size_t add_arc(std::uint32_t from, std::uint32_t to, std::int64_t cap) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap, 0});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0, 0});
    return arcs_.size() - 2;
  }

  std::int64_t flow(std::size_t arc) const { return arcs_[arc].flow; }

  std::int64_t run(std::uint32_t s, std::uint32_t t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += f;
    }
    return total;
  }

 private:
  struct Arc {
    std::uint32_t to;
    std::int64_t cap;
    std::int64_t flow;
  };

  bool bfs(std::uint32_t s, std::uint32_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::uint32_t> queue{s};
    level_[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t v = queue[head];
      for (std::size_t id : adj_[v]) {
        const Arc& a = arcs_[id];
        if (a.cap - a.flow > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::uint32_t v, std::uint32_t t, std::int64_t pushed) {
    if (v == t) return pushed;
    for (; cursor_[v] < adj_[v].size(); ++cursor_[v]) {
      const std::size_t id = adj_[v][cursor_[v]];
      Arc& a = arcs_[id];
      if (a.cap - a.flow <= 0 || level_[a.to] != level_[v] + 1) continue;
      if (std::int64_t f = dfs(a.to, t, std::min(pushed, a.cap - a.flow))) {
        a.flow += f;
        arcs_[id ^ 1].flow -= f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace pathpair::detail
