#include "pathpair/layer_solver.hpp"

#include <algorithm>

#include "pathpair/error.hpp"
#include "sweep.hpp"

namespace pathpair {

std::optional<std::vector<Path>> OracleLayerSolver::solve(const Graph& layer,
                                                          std::span<const char> usable,
                                                          std::span<const TerminalPair> pairs) const {
  if (pairs.size() > capability_) return std::nullopt;
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < layer.num_edges(); ++e)
    if (usable[e]) edges.push_back(layer.edge(e));
  const Graph residual = Graph::from_edges(layer.num_vertices(), std::move(edges));
  const SolveResult r =
      solve_exact(residual, Pairing::checked(std::vector<TerminalPair>(pairs.begin(), pairs.end()),
                                                layer.num_vertices()),
                  cfg_);
  if (r.verdict != Verdict::kFeasible) return std::nullopt;
  return r.system->routes;
}

std::optional<std::vector<Path>> CompleteLayerSolver::solve(const Graph& layer,
                                                            std::span<const char> usable,
                                                            std::span<const TerminalPair> pairs) const {
  if (pairs.size() > capability_) return std::nullopt;
  std::vector<char> free(usable.begin(), usable.end());
  auto take = [&](Vertex u, Vertex v) {
    const auto e = layer.edge_id(u, v);
    if (!e || !free[*e]) return false;
    free[*e] = 0;
    return true;
  };
  std::vector<Path> out(pairs.size());
  std::vector<std::size_t> detour;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (take(pairs[i].first, pairs[i].second)) {
      out[i].vertices = {pairs[i].first, pairs[i].second};
    } else {
      detour.push_back(i);
    }
  }
  for (std::size_t i : detour) {
    const auto [x, y] = pairs[i];
    bool found = false;
    for (Vertex w = 0; w < layer.num_vertices() && !found; ++w) {
      if (w == x || w == y) continue;
      const auto e1 = layer.edge_id(x, w);
      const auto e2 = layer.edge_id(w, y);
      if (e1 && e2 && free[*e1] && free[*e2]) {
        free[*e1] = free[*e2] = 0;
        out[i].vertices = {x, w, y};
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

std::optional<std::vector<Path>> SweepLayerSolver::solve(const Graph& layer,
                                                         std::span<const char> usable,
                                                         std::span<const TerminalPair> pairs) const {
  if (pairs.size() > capability() || layer.num_vertices() != k_ * m_) return std::nullopt;
  if (!std::all_of(usable.begin(), usable.end(), [](char c) { return c != 0; })) return std::nullopt;
  try {
    return detail::sweep_routes(k_, m_, pairs);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace pathpair
