#include "pathpair/matching.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "pathpair/error.hpp"

namespace pathpair {

BipartiteGraph::BipartiteGraph(std::size_t left_n, std::size_t right_n)
    : left_n_(left_n), right_n_(right_n), adj_(left_n) {}

void BipartiteGraph::add_edge(std::uint32_t left, std::uint32_t right) {
  if (left >= left_n_ || right >= right_n_) {
    throw Error(ErrorCode::kInvalidArgument, "bipartite edge (" + std::to_string(left) + "," +
                                                 std::to_string(right) + ") out of range");
  }
  adj_[left].push_back(right);
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adj_) total += a.size();
  return total;
}

std::size_t BipartiteGraph::min_left_degree() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& a : adj_) best = std::min(best, a.size());
  return left_n_ == 0 ? 0 : best;
}

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g),
        match_left_(g.left_size(), kUnmatched),
        match_right_(g.right_size(), kUnmatched),
        dist_(g.left_size()),
        cursor_(g.left_size()) {}

  Matching run() {
    std::size_t size = greedy();
    while (layer()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      for (std::uint32_t u = 0; u < g_.left_size(); ++u) {
        if (match_left_[u] == kUnmatched && augment(u)) ++size;
      }
    }
    return {std::move(match_left_), std::move(match_right_), size};
  }

 private:
  // Cheap first pass: lowest free neighbour for each left vertex.
  std::size_t greedy() {
    std::size_t size = 0;
    for (std::uint32_t u = 0; u < g_.left_size(); ++u) {
      for (std::uint32_t r : g_.neighbors(u)) {
        if (match_right_[r] == kUnmatched) {
          match_left_[u] = static_cast<std::int32_t>(r);
          match_right_[r] = static_cast<std::int32_t>(u);
          ++size;
          break;
        }
      }
    }
    return size;
  }

  // BFS from all free left vertices; true if some free right vertex is hit.
  bool layer() {
    queue_.clear();
    for (std::uint32_t u = 0; u < g_.left_size(); ++u) {
      if (match_left_[u] == kUnmatched) {
        dist_[u] = 0;
        queue_.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    std::uint32_t limit = kInf;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const std::uint32_t u = queue_[head];
      if (dist_[u] >= limit) continue;
      for (std::uint32_t r : g_.neighbors(u)) {
        const std::int32_t w = match_right_[r];
        if (w == kUnmatched) {
          limit = std::min(limit, dist_[u] + 1);
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue_.push_back(static_cast<std::uint32_t>(w));
        }
      }
    }
    return limit != kInf;
  }

  // Iterative DFS along the layered graph.
  bool augment(std::uint32_t root) {
    stack_.clear();
    stack_.push_back(root);
    while (!stack_.empty()) {
      const std::uint32_t u = stack_.back();
      const auto& nbrs = g_.neighbors(u);
      bool descended = false;
      while (cursor_[u] < nbrs.size()) {
        const std::uint32_t r = nbrs[cursor_[u]];
        const std::int32_t w = match_right_[r];
        if (w == kUnmatched) {
          // flip the alternating path held on the stack
          for (std::uint32_t x : stack_) {
            const std::uint32_t rx = g_.neighbors(x)[cursor_[x]];
            match_left_[x] = static_cast<std::int32_t>(rx);
            match_right_[rx] = static_cast<std::int32_t>(x);
          }
          return true;
        }
        if (dist_[w] == dist_[u] + 1) {
          stack_.push_back(static_cast<std::uint32_t>(w));
          descended = true;
          break;
        }
        ++cursor_[u];
      }
      if (descended) continue;
      // dead end: retire u for this phase and advance the parent
      dist_[u] = kInf;
      stack_.pop_back();
      if (!stack_.empty()) ++cursor_[stack_.back()];
    }
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<std::int32_t> match_left_;
  std::vector<std::int32_t> match_right_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::size_t> cursor_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint32_t> stack_;
};

}  // namespace

Matching max_matching(const BipartiteGraph& graph) { return HopcroftKarp(graph).run(); }

std::variant<Matching, HallViolator> perfect_or_witness(const BipartiteGraph& graph) {
  if (graph.left_size() != graph.right_size()) {
    throw Error(ErrorCode::kInvalidArgument, "perfect_or_witness: classes differ in size");
  }
  Matching m = max_matching(graph);
  if (m.size == graph.left_size()) return m;

  const auto root = static_cast<std::uint32_t>(
      std::find(m.left_to_right.begin(), m.left_to_right.end(), kUnmatched) -
      m.left_to_right.begin());
  std::vector<char> seen_left(graph.left_size(), 0);
  std::vector<char> seen_right(graph.right_size(), 0);
  std::vector<std::uint32_t> queue{root};
  seen_left[root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::uint32_t r : graph.neighbors(queue[head])) {
      if (seen_right[r]) continue;
      seen_right[r] = 1;
      // maximality: every right vertex reached here is matched
      const auto w = static_cast<std::uint32_t>(m.right_to_left[r]);
      if (!seen_left[w]) {
        seen_left[w] = 1;
        queue.push_back(w);
      }
    }
  }
  HallViolator witness;
  for (std::uint32_t u = 0; u < graph.left_size(); ++u)
    if (seen_left[u]) witness.left_set.push_back(u);
  for (std::uint32_t r = 0; r < graph.right_size(); ++r)
    if (seen_right[r]) witness.neighborhood.push_back(r);
  return witness;
}

}  // namespace pathpair
