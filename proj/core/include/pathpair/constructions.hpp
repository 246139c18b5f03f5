#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pathpair/graph.hpp"
#include "pathpair/pairing.hpp"

namespace pathpair {

// Path P_k with every vertex blown up to K_m and every edge to K_{m,m}.
// Vertex x_{i,j} (class i, slot j) has index i*m + j and label ClassTag{i,j}.
struct BlownUpPath {
  std::size_t k = 0;
  std::size_t m = 0;
  Graph graph;

  std::size_t class_of(Vertex v) const { return v / m; }
  Vertex vertex(std::size_t cls, std::size_t slot) const {
    return static_cast<Vertex>(cls * m + slot);
  }
};

BlownUpPath blown_up_path(std::size_t k, std::size_t m);

enum class Claim { kInfeasible, kFeasible };

struct AdversarialInstance {
  Graph graph;
  Pairing pairing;
  Claim claim = Claim::kInfeasible;
  std::string description;
};

// Terminal placement on K_{1,b}□K_{1,d} that cannot be routed. Star factors
// use the star() numbering (centre 0) and product vertex (g,h) = g*(d+1)+h.
// Column C = {(1,h) : h leaf}, row R = {(g,1) : g leaf}, y = (1,1),
// x = (2,2); x-y is a pair and so are the two hubs (0,1) and (1,0) whose only
// non-terminal neighbour is the centre. Remaining C/R terminals are paired in
// ascending order; for odd b+d one extra degree-two vertex fills the last pair.
// Requires b,d >= 2. Yields ceil((b+d)/2)+1 pairs.
AdversarialInstance star_product_blocking(std::size_t b, std::size_t d);

enum class CutVariant {
  kCliqueTail,     // K_{1,k} with leaves matched into K_N, N >= 2k
  kMatchedClique,  // K_{1,k} and K_{k-1} joined by a matching, k >= 6
};

// Graphs that satisfy the cut condition yet are not path-pairable, together
// with the blocking pairing (every leaf is a terminal, the centre is paired
// into the clique). Numbering: centre 0, leaves 1..k, clique k+1.. onwards.
// Leaf i (1-based) joins clique vertex i; in the matched variant leaf k joins
// clique vertex 1. Pairings have k pairs.
AdversarialInstance cut_ok_not_pp(std::size_t k, CutVariant variant, std::size_t clique_size = 0);

// Box P_{2d} x ... x P_{2d} x P_{2d+1} (d factors) inside a large enough
// d-dimensional torus, whose boundary is smaller than its size.
struct GridViolation {
  std::vector<std::size_t> sides;  // box side lengths, last one is 2d+1
  std::uint64_t size = 0;          // (2d)^(d-1) (2d+1)
  std::uint64_t boundary = 0;      // 2((d-1)(2d)^(d-2)(2d+1) + (2d)^(d-1))
};

GridViolation grid_violating_subgrid(std::size_t d);

// Materialises the torus C_{m_1} x ... x C_{m_d} (first factor most
// significant in the index) and the box vertices anchored at the origin.
struct TorusBox {
  Graph torus;
  std::vector<Vertex> box;
};

TorusBox torus_with_box(std::span<const std::size_t> cycle_lengths,
                        std::span<const std::size_t> box_sides);

}  // namespace pathpair
