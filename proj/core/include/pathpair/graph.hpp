#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace pathpair {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge normalized(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Coordinates of a vertex of G□H: g indexes the first factor, h the second.
struct ProductVertex {
  Vertex g = 0;
  Vertex h = 0;
  friend bool operator==(const ProductVertex&, const ProductVertex&) = default;
};

// Class/index tag, used by complete_bipartite (class 1 or 2) and by the
// blown-up path (class i in [0,k)).
struct ClassTag {
  std::uint32_t cls = 0;
  std::uint32_t index = 0;
  friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

using Label = std::variant<std::monostate, ProductVertex, ClassTag>;

// Factor sizes of a graph produced by cartesian_product.
struct ProductShape {
  std::size_t g_order = 0;
  std::size_t h_order = 0;
  friend bool operator==(const ProductShape&, const ProductShape&) = default;
};

// Immutable simple undirected graph in CSR form. Vertex identity is the dense
// index; labels ride alongside. Neighbour lists are sorted ascending and carry
// the id of the connecting edge, edge ids index the sorted edge list.
class Graph {
 public:
  Graph() = default;

  // Throws Error(kInvalidGraph) on self-loops, duplicates or out-of-range
  // endpoints. Edge orientation in the input does not matter.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges, std::vector<Label> labels = {},
                          std::optional<ProductShape> shape = std::nullopt);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {nbr_.data() + offsets_[v], nbr_.data() + offsets_[v + 1]};
  }
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {nbr_edge_.data() + offsets_[v], nbr_edge_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::optional<EdgeId> edge_id(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return edge_id(u, v).has_value(); }

  bool has_labels() const noexcept { return !labels_.empty(); }
  std::span<const Label> labels() const noexcept { return labels_; }
  const Label& label(Vertex v) const { return labels_.at(v); }
  const std::optional<ProductShape>& product_shape() const noexcept { return shape_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> nbr_;
  std::vector<EdgeId> nbr_edge_;
  std::vector<Label> labels_;
  std::optional<ProductShape> shape_;
};

// --- generators ------------------------------------------------------------
//
// Canonical numbering (frozen, CLI output depends on it):
//   complete(n)              vertices 0..n-1
//   complete_bipartite(a,b)  class 1 = 0..a-1, class 2 = a..a+b-1,
//                            labelled ClassTag{class, index within class}
//   path(k)                  0-1-...-(k-1)
//   cycle(k)                 path(k) plus edge (0,k-1); k >= 3
//   star(n)                  centre 0, leaves 1..n
//   hypercube(d)             vertices 0..2^d-1, adjacent iff one bit differs
Graph complete(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph path(std::size_t k);
Graph cycle(std::size_t k);
Graph star(std::size_t n);
Graph hypercube(std::size_t d);

// --- product & layers ------------------------------------------------------

// Product vertex (g,h) gets index g*|V(H)| + h.
inline Vertex product_index(ProductVertex p, std::size_t h_order) {
  return static_cast<Vertex>(p.g * h_order + p.h);
}
inline ProductVertex product_coords(Vertex v, std::size_t h_order) {
  return {static_cast<Vertex>(v / h_order), static_cast<Vertex>(v % h_order)};
}

Graph cartesian_product(const Graph& g, const Graph& h);

enum class LayerKind {
  kG,  // copy of G, fixed second coordinate (anchor in V(H))
  kH,  // copy of H, fixed first coordinate (anchor in V(G))
};

struct LayerRef {
  LayerKind kind = LayerKind::kG;
  Vertex anchor = 0;
};

struct Layer {
  Graph graph;
  std::vector<Vertex> embedding;  // layer vertex -> product vertex
};

// Throws Error(kMissingLabels) if `product` was not built by cartesian_product.
Layer layer_subgraph(const Graph& product, LayerRef ref);

// Number of edges with exactly one endpoint in `subset`. Duplicate entries in
// `subset` are ignored; out-of-range entries throw Error(kInvalidArgument).
std::size_t edge_boundary(const Graph& g, std::span<const Vertex> subset);

// Number of edges with both endpoints in `subset`.
std::size_t induced_edge_count(const Graph& g, std::span<const Vertex> subset);

}  // namespace pathpair
