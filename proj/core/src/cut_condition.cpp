#include "pathpair/cut_condition.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "pathpair/error.hpp"

namespace pathpair {

std::uint64_t subsets_up_to(std::size_t n, std::size_t k) {
  k = std::min(k, n);
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, 0)
  for (std::size_t i = 1; i <= k; ++i) {
    // C(n,i) = C(n,i-1) * (n-i+1) / i, exact at every step
    const std::uint64_t factor = n - i + 1;
    if (binom > UINT64_MAX / factor) return UINT64_MAX;
    binom = binom * factor / i;
    if (total > UINT64_MAX - binom) return UINT64_MAX;
    total += binom;
  }
  return total;
}

namespace {

// Visits combinations of {0..n-1} of each size 1..k in (size, lex) order and
// stops at the first one where `violates` returns true.
template <typename Violates>
CutCheck enumerate(std::size_t n, std::size_t k, Violates violates) {
  CutCheck result;
  std::vector<Vertex> combo;
  for (std::size_t size = 1; size <= std::min(k, n); ++size) {
    combo.resize(size);
    for (std::size_t i = 0; i < size; ++i) combo[i] = static_cast<Vertex>(i);
    while (true) {
      ++result.subsets_examined;
      if (auto boundary = violates(combo)) {
        result.ok = false;
        result.witness = CutWitness{combo, *boundary, size};
        return result;
      }
      // advance to the next combination
      std::size_t i = size;
      while (i > 0 && combo[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return result;
}

}  // namespace

CutCheck check_k_cut(const Graph& g, std::size_t k, std::uint64_t cap) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "check_k_cut: k must be at least 1");
  const std::size_t n = g.num_vertices();
  const std::uint64_t needed = subsets_up_to(n, k);
  if (needed > cap) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "instance too large: " + std::to_string(needed) + " subsets exceed the cap of " +
                    std::to_string(cap));
  }
  if (n <= 64) {
    std::vector<std::uint64_t> adj(n, 0);
    for (const auto& e : g.edges()) {
      adj[e.u] |= std::uint64_t{1} << e.v;
      adj[e.v] |= std::uint64_t{1} << e.u;
    }
    return enumerate(n, k, [&](const std::vector<Vertex>& s) -> std::optional<std::size_t> {
      std::uint64_t mask = 0;
      for (Vertex v : s) mask |= std::uint64_t{1} << v;
      std::size_t boundary = 0;
      for (Vertex v : s) boundary += static_cast<std::size_t>(std::popcount(adj[v] & ~mask));
      if (boundary < s.size()) return boundary;
      return std::nullopt;
    });
  }
  std::vector<char> in(n, 0);
  return enumerate(n, k, [&](const std::vector<Vertex>& s) -> std::optional<std::size_t> {
    for (Vertex v : s) in[v] = 1;
    std::size_t boundary = 0;
    for (Vertex v : s)
      for (Vertex w : g.neighbors(v)) boundary += !in[w];
    for (Vertex v : s) in[v] = 0;
    if (boundary < s.size()) return boundary;
    return std::nullopt;
  });
}

CutCheck check_full_cut(const Graph& g, std::uint64_t cap) {
  const std::size_t half = g.num_vertices() / 2;
  if (half == 0) return {};
  return check_k_cut(g, half, cap);
}

ProductViolation product_violation(std::uint64_t g0_size, std::uint64_t g0_edges,
                                   std::uint64_t h0_size, std::uint64_t h0_edges) {
  ProductViolation out;
  out.product_size = g0_size * h0_size;
  out.product_edges = g0_size * h0_edges + h0_size * g0_edges;
  out.hypotheses_hold = 2 * g0_edges < g0_size && 2 * h0_edges < h0_size;
  out.violated = out.product_edges < out.product_size;
  if (out.hypotheses_hold && !out.violated) {
    throw Error(ErrorCode::kInvalidArgument, "product_violation: sparse factors gave a dense product");
  }
  return out;
}

std::size_t pp_upper_bound_from_witness(const Graph& g, std::span<const Vertex> subset) {
  std::vector<Vertex> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const std::size_t boundary = edge_boundary(g, s);
  if (boundary >= s.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "pp_upper_bound_from_witness: d(S)=" + std::to_string(boundary) +
                    " is not below |S|=" + std::to_string(s.size()));
  }
  return s.size() - 1;
}

}  // namespace pathpair
