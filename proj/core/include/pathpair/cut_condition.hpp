#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pathpair/graph.hpp"

namespace pathpair {

// A nonempty vertex set with fewer boundary edges than vertices.
struct CutWitness {
  std::vector<Vertex> subset;  // ascending
  std::size_t boundary = 0;
  std::size_t size = 0;
};

struct CutCheck {
  bool ok = true;
  std::optional<CutWitness> witness;
  std::uint64_t subsets_examined = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 20'000'000;

// Exhaustive k-cut-condition check over every S with 1 <= |S| <= k. The first
// witness in (size, lexicographic) order is returned. Throws
// Error(kInstanceTooLarge) when sum_{i<=k} C(n,i) exceeds `cap`.
CutCheck check_k_cut(const Graph& g, std::size_t k, std::uint64_t cap = kDefaultEnumerationCap);

// Full cut-condition: every S with |S| <= floor(n/2). For even n this is the
// usual 2n'-vertex form; odd n uses the same floor bound.
CutCheck check_full_cut(const Graph& g, std::uint64_t cap = kDefaultEnumerationCap);

// Number of subsets check_k_cut would enumerate, saturating at UINT64_MAX.
std::uint64_t subsets_up_to(std::size_t n, std::size_t k);

struct ProductViolation {
  bool hypotheses_hold = false;  // 2e(G0) < |G0| and 2e(H0) < |H0|
  bool violated = false;         // product_edges < product_size
  std::uint64_t product_size = 0;
  std::uint64_t product_edges = 0;
};

// Counts for G0□H0 from factor counts: |G0||H0| vertices and
// |G0|e(H0) + |H0|e(G0) internal edges. When both hypotheses hold the product
// set is sparse (violated == true); that implication is asserted.
ProductViolation product_violation(std::uint64_t g0_size, std::uint64_t g0_edges,
                                   std::uint64_t h0_size, std::uint64_t h0_edges);

// Terminals on all of S, partners outside, cannot all be joined, so
// pp(G) <= |S| - 1. Throws Error(kInvalidArgument) unless d(S) < |S|.
std::size_t pp_upper_bound_from_witness(const Graph& g, std::span<const Vertex> subset);

}  // namespace pathpair
