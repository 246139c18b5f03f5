#pragma once

#include <vector>

#include "pathpair/graph.hpp"
#include "pathpair/random.hpp"

namespace pathpair::testing {

// G(n, p) with p given in percent.
inline Graph random_graph(std::size_t n, std::uint64_t percent, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.below(100) < percent) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

}  // namespace pathpair::testing
