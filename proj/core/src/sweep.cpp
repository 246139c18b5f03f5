#include "sweep.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "max_flow.hpp"
#include "pathpair/error.hpp"

namespace pathpair::detail {

std::vector<Path> sweep_routes(std::size_t k, std::size_t m, std::span<const TerminalPair> pairs,
                               nlohmann::json* stats) {
  const std::size_t n = k * m;
  auto cls = [m](Vertex v) { return static_cast<std::size_t>(v / m); };
  for (const auto& p : pairs) {
    if (p.first >= n || p.second >= n) {
      throw Error(ErrorCode::kInvalidPairing, "sweep: terminal outside G(k,m)");
    }
  }

  std::vector<Path> routes(pairs.size());
  std::vector<Vertex> right(pairs.size());
  std::vector<std::vector<std::size_t>> starting(k);  // open pairs by left class
  std::vector<char> own(n, 0);                        // left terminal of an open pair
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Vertex x = pairs[i].first;
    Vertex y = pairs[i].second;
    if (cls(x) == cls(y)) {
      routes[i].vertices = {x, y};  // clique edge
      continue;
    }
    if (cls(x) > cls(y)) std::swap(x, y);
    routes[i].vertices = {x};
    right[i] = y;
    starting[cls(x)].push_back(i);
    own[x] = 1;
  }

  std::vector<std::size_t> open;  // tokens hosted in the current class
  std::vector<std::uint32_t> load(n, 0);
  for (std::size_t c = 0; c < k; ++c) {
    open.insert(open.end(), starting[c].begin(), starting[c].end());
    std::sort(open.begin(), open.end());
    for (std::size_t i : open) {
      if (++load[routes[i].back()] > m) {
        throw Error(ErrorCode::kSweepInvariantViolated,
                    "vertex " + std::to_string(routes[i].back()) + " hosts more than " +
                        std::to_string(m) + " open tokens");
      }
    }
    if (open.empty()) continue;
    if (c + 1 == k) {
      throw Error(ErrorCode::kSweepInvariantViolated, "tokens left open at the last class");
    }

    // joins into class c+1 first; their edges are off limits for moves
    std::vector<char> edge_taken(m * m, 0);  // (host slot, target slot)
    std::vector<std::size_t> movers;
    std::size_t joined = 0;
    for (std::size_t i : open) {
      const Vertex host = routes[i].back();
      if (cls(right[i]) == c + 1) {
        edge_taken[(host % m) * m + right[i] % m] = 1;
        routes[i].vertices.push_back(right[i]);
        ++joined;
      } else {
        movers.push_back(i);
      }
    }

    // host slot -> target slot, capacity 1 per unused edge; target keeps
    // room for its own token
    const std::uint32_t src = static_cast<std::uint32_t>(2 * m);
    const std::uint32_t sink = src + 1;
    MaxFlow flow(2 * m + 2);
    std::vector<std::uint32_t> at_host(m, 0);
    for (std::size_t i : movers) ++at_host[routes[i].back() % m];
    for (std::uint32_t x = 0; x < m; ++x)
      if (at_host[x] > 0) flow.add_arc(src, x, at_host[x]);
    std::vector<std::size_t> arc(m * m, SIZE_MAX);
    for (std::uint32_t x = 0; x < m; ++x) {
      if (at_host[x] == 0) continue;
      for (std::uint32_t y = 0; y < m; ++y)
        if (!edge_taken[x * m + y]) arc[x * m + y] = flow.add_arc(x, static_cast<std::uint32_t>(m + y), 1);
    }
    for (std::uint32_t y = 0; y < m; ++y) {
      const Vertex target = static_cast<Vertex>((c + 1) * m + y);
      flow.add_arc(static_cast<std::uint32_t>(m + y), sink, static_cast<std::int64_t>(m - own[target]));
    }
    const auto moved = static_cast<std::size_t>(flow.run(src, sink));
    if (moved != movers.size()) {
      throw Error(ErrorCode::kSweepInvariantViolated,
                  "class " + std::to_string(c) + ": only " + std::to_string(moved) + " of " +
                      std::to_string(movers.size()) + " tokens can advance");
    }
    std::vector<std::vector<std::size_t>> queue(m);
    for (std::size_t i : movers) queue[routes[i].back() % m].push_back(i);
    std::vector<std::size_t> next;
    for (std::uint32_t x = 0; x < m; ++x) {
      std::size_t q = 0;
      for (std::uint32_t y = 0; y < m; ++y) {
        const std::size_t id = arc[x * m + y];
        if (id == SIZE_MAX || flow.flow(id) == 0) continue;
        const std::size_t i = queue[x][q++];
        routes[i].vertices.push_back(static_cast<Vertex>((c + 1) * m + y));
        next.push_back(i);
      }
    }
    if (stats) {
      std::uint32_t peak = 0;
      for (std::size_t s = 0; s < m; ++s) peak = std::max(peak, load[c * m + s]);
      stats->push_back({{"class", c}, {"open", open.size()}, {"joined", joined},
                        {"advanced", movers.size()}, {"peak_load", peak}});
    }
    open = std::move(next);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (routes[i].front() != pairs[i].first) routes[i] = reversed(std::move(routes[i]));
  return routes;
}

}  // namespace pathpair::detail
