#include "pathpair/graph.hpp"

#include <algorithm>
#include <string>

#include "pathpair/error.hpp"

namespace pathpair {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kInvalidGraph: return "invalid_graph";
    case ErrorCode::kInvalidPairing: return "invalid_pairing";
    case ErrorCode::kMissingLabels: return "missing_labels";
    case ErrorCode::kInstanceTooLarge: return "instance_too_large";
    case ErrorCode::kPreconditionViolated: return "precondition_violated";
    case ErrorCode::kLayerSolverFailed: return "layer_solver_failed";
    case ErrorCode::kSweepInvariantViolated: return "sweep_invariant_violated";
    case ErrorCode::kBalancingFailed: return "balancing_failed";
    case ErrorCode::kEdgeConflict: return "edge_conflict";
    case ErrorCode::kMatchingFailed: return "matching_failed";
    case ErrorCode::kRepairStalled: return "repair_stalled";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "unknown";
}

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges, std::vector<Label> labels,
                        std::optional<ProductShape> shape) {
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::kInvalidGraph, "label count " + std::to_string(labels.size()) +
                                              " does not match vertex count " + std::to_string(n));
  }
  if (shape && shape->g_order * shape->h_order != n) {
    throw Error(ErrorCode::kInvalidGraph, "product shape does not match vertex count");
  }
  for (auto& e : edges) {
    if (e.u == e.v) {
      throw Error(ErrorCode::kInvalidGraph, "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::kInvalidGraph, "edge (" + std::to_string(e.u) + "," +
                                                std::to_string(e.v) + ") has an endpoint >= " +
                                                std::to_string(n));
    }
    e = Edge::normalized(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw Error(ErrorCode::kInvalidGraph, "duplicate edge (" + std::to_string(dup->u) + "," +
                                              std::to_string(dup->v) + ")");
  }

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.labels_ = std::move(labels);
  g.shape_ = shape;

  g.offsets_.assign(n + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.nbr_.resize(2 * g.edges_.size());
  g.nbr_edge_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Sorted edge order leaves every neighbour list sorted: for vertex w all
  // edges (u,w) with u < w precede the edges (w,v).
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const auto& e = g.edges_[id];
    g.nbr_[fill[e.u]] = e.v;
    g.nbr_edge_[fill[e.u]++] = id;
    g.nbr_[fill[e.v]] = e.u;
    g.nbr_edge_[fill[e.v]++] = id;
  }
  return g;
}

std::optional<EdgeId> Graph::edge_id(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return std::nullopt;
  // search the shorter list
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nbrs = neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

namespace {

void require_positive(std::size_t value, const char* what) {
  if (value == 0) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be at least 1");
  }
}

}  // namespace

Graph complete(std::size_t n) {
  require_positive(n, "complete: n");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph::from_edges(n, std::move(edges));
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  require_positive(a, "complete_bipartite: a");
  require_positive(b, "complete_bipartite: b");
  std::vector<Edge> edges;
  edges.reserve(a * b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) edges.push_back({u, static_cast<Vertex>(a + v)});
  std::vector<Label> labels;
  labels.reserve(a + b);
  for (std::uint32_t i = 0; i < a; ++i) labels.emplace_back(ClassTag{1, i});
  for (std::uint32_t i = 0; i < b; ++i) labels.emplace_back(ClassTag{2, i});
  return Graph::from_edges(a + b, std::move(edges), std::move(labels));
}

Graph path(std::size_t k) {
  require_positive(k, "path: k");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < k; ++v) edges.push_back({v, v + 1});
  return Graph::from_edges(k, std::move(edges));
}

Graph cycle(std::size_t k) {
  if (k < 3) {
    throw Error(ErrorCode::kInvalidArgument, "cycle: k must be at least 3 for a simple graph");
  }
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < k; ++v) edges.push_back({v, v + 1});
  edges.push_back({0, static_cast<Vertex>(k - 1)});
  return Graph::from_edges(k, std::move(edges));
}

Graph star(std::size_t n) {
  require_positive(n, "star: n");
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= n; ++v) edges.push_back({0, v});
  return Graph::from_edges(n + 1, std::move(edges));
}

Graph hypercube(std::size_t d) {
  if (d > 24) throw Error(ErrorCode::kInvalidArgument, "hypercube: dimension above 24");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Edge> edges;
  edges.reserve(n * d / 2);
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t bit = 0; bit < d; ++bit) {
      const Vertex w = v ^ (Vertex{1} << bit);
      if (v < w) edges.push_back({v, w});
    }
  return Graph::from_edges(n, std::move(edges));
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  const std::size_t ng = g.num_vertices();
  const std::size_t nh = h.num_vertices();
  if (ng == 0 || nh == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cartesian_product: factors must be nonempty");
  }
  std::vector<Edge> edges;
  edges.reserve(ng * h.num_edges() + nh * g.num_edges());
  for (Vertex x = 0; x < ng; ++x)
    for (const auto& e : h.edges())
      edges.push_back({product_index({x, e.u}, nh), product_index({x, e.v}, nh)});
  for (const auto& e : g.edges())
    for (Vertex u = 0; u < nh; ++u)
      edges.push_back({product_index({e.u, u}, nh), product_index({e.v, u}, nh)});
  std::vector<Label> labels;
  labels.reserve(ng * nh);
  for (Vertex x = 0; x < ng; ++x)
    for (Vertex u = 0; u < nh; ++u) labels.emplace_back(ProductVertex{x, u});
  return Graph::from_edges(ng * nh, std::move(edges), std::move(labels), ProductShape{ng, nh});
}

Layer layer_subgraph(const Graph& product, LayerRef ref) {
  const auto& shape = product.product_shape();
  if (!shape || !product.has_labels()) {
    throw Error(ErrorCode::kMissingLabels, "layer_subgraph: graph carries no product labels");
  }
  const std::size_t size = ref.kind == LayerKind::kG ? shape->g_order : shape->h_order;
  const std::size_t anchor_range = ref.kind == LayerKind::kG ? shape->h_order : shape->g_order;
  if (ref.anchor >= anchor_range) {
    throw Error(ErrorCode::kInvalidArgument, "layer_subgraph: anchor out of range");
  }
  Layer layer;
  layer.embedding.resize(size);
  std::vector<Vertex> local(product.num_vertices(), static_cast<Vertex>(-1));
  for (Vertex i = 0; i < size; ++i) {
    const ProductVertex p = ref.kind == LayerKind::kG ? ProductVertex{i, ref.anchor}
                                                      : ProductVertex{ref.anchor, i};
    const Vertex v = product_index(p, shape->h_order);
    layer.embedding[i] = v;
    local[v] = i;
  }
  std::vector<Edge> edges;
  for (Vertex i = 0; i < size; ++i)
    for (Vertex w : product.neighbors(layer.embedding[i])) {
      const Vertex j = local[w];
      if (j != static_cast<Vertex>(-1) && i < j) edges.push_back({i, j});
    }
  layer.graph = Graph::from_edges(size, std::move(edges));
  return layer;
}

namespace {

std::vector<char> membership(const Graph& g, std::span<const Vertex> subset) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : subset) {
    if (v >= g.num_vertices()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "vertex " + std::to_string(v) + " is not in the graph");
    }
    in[v] = 1;
  }
  return in;
}

}  // namespace

std::size_t edge_boundary(const Graph& g, std::span<const Vertex> subset) {
  const auto in = membership(g, subset);
  std::size_t count = 0;
  for (const auto& e : g.edges()) count += in[e.u] != in[e.v];
  return count;
}

std::size_t induced_edge_count(const Graph& g, std::span<const Vertex> subset) {
  const auto in = membership(g, subset);
  std::size_t count = 0;
  for (const auto& e : g.edges()) count += in[e.u] && in[e.v];
  return count;
}

}  // namespace pathpair
