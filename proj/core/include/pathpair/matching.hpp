#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace pathpair {

// Bipartite graph given by left adjacency lists. Right vertices with a
// capacity above one are modelled by replicating them into independent
// vertices before construction.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t left_n, std::size_t right_n);

  // Throws Error(kInvalidArgument) on out-of-range endpoints.
  void add_edge(std::uint32_t left, std::uint32_t right);
  void reserve(std::uint32_t left, std::size_t count) { adj_[left].reserve(count); }

  std::size_t left_size() const noexcept { return left_n_; }
  std::size_t right_size() const noexcept { return right_n_; }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t left) const { return adj_[left]; }
  std::size_t edge_count() const;
  std::size_t min_left_degree() const;

 private:
  std::size_t left_n_;
  std::size_t right_n_;
  std::vector<std::vector<std::uint32_t>> adj_;
};

inline constexpr std::int32_t kUnmatched = -1;

struct Matching {
  std::vector<std::int32_t> left_to_right;
  std::vector<std::int32_t> right_to_left;
  std::size_t size = 0;
};

// Maximum-cardinality matching by layered augmentation (Hopcroft-Karp),
// O(E sqrt(V)). Free left vertices and adjacency lists are scanned in
// ascending order, so the result is a pure function of the input.
Matching max_matching(const BipartiteGraph& graph);

// A left set W whose neighbourhood is strictly smaller than W.
struct HallViolator {
  std::vector<std::uint32_t> left_set;
  std::vector<std::uint32_t> neighborhood;
};

// Requires left_size() == right_size(). Returns a perfect matching, or the
// set of left vertices reachable by alternating paths from the lowest
// unmatched left vertex (its neighbourhood has exactly |W|-1 vertices).
std::variant<Matching, HallViolator> perfect_or_witness(const BipartiteGraph& graph);

}  // namespace pathpair
