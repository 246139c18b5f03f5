#include "pathpair/pairing.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "pathpair/error.hpp"

namespace pathpair {

std::vector<std::string> pairing_violations(std::span<const TerminalPair> pairs,
                                            std::optional<std::size_t> vertex_count) {
  std::vector<std::string> problems;
  std::unordered_map<Vertex, std::size_t> seen;
  seen.reserve(pairs.size() * 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [x, y] = pairs[i];
    if (x == y) {
      problems.push_back("pair " + std::to_string(i) + " joins vertex " + std::to_string(x) +
                         " to itself");
    }
    const Vertex ends[2] = {x, y};
    for (int k = 0; k < (x == y ? 1 : 2); ++k) {
      const Vertex v = ends[k];
      if (vertex_count && v >= *vertex_count) {
        problems.push_back("pair " + std::to_string(i) + " uses vertex " + std::to_string(v) +
                           " outside the graph");
      }
      auto [it, inserted] = seen.emplace(v, i);
      if (!inserted) {
        problems.push_back("vertex " + std::to_string(v) + " is a terminal of pairs " +
                           std::to_string(it->second) + " and " + std::to_string(i));
      }
    }
  }
  return problems;
}

Pairing::Pairing(std::vector<TerminalPair> pairs) : pairs_(std::move(pairs)) {
  if (auto problems = pairing_violations(pairs_, std::nullopt); !problems.empty()) {
    throw Error(ErrorCode::kInvalidPairing, problems.front());
  }
}

Pairing Pairing::checked(std::vector<TerminalPair> pairs, std::size_t vertex_count) {
  if (auto problems = pairing_violations(pairs, vertex_count); !problems.empty()) {
    throw Error(ErrorCode::kInvalidPairing, problems.front());
  }
  return Pairing(std::move(pairs));
}

Path reversed(Path p) {
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

Path concatenate(Path head, const Path& tail) {
  if (head.vertices.empty()) return tail;
  if (tail.vertices.empty()) return head;
  if (head.back() != tail.front()) {
    throw Error(ErrorCode::kInvalidArgument, "concatenate: segments do not meet");
  }
  head.vertices.insert(head.vertices.end(), tail.vertices.begin() + 1, tail.vertices.end());
  return head;
}

EdgeLedger::EdgeLedger(const Graph& host)
    : host_(&host), used_(host.num_edges(), 0), used_at_(host.num_vertices(), 0) {}

bool EdgeLedger::is_used(Vertex u, Vertex v) const {
  const auto id = host_->edge_id(u, v);
  return id && used_[*id];
}

bool EdgeLedger::is_free(Vertex u, Vertex v) const {
  const auto id = host_->edge_id(u, v);
  return id && !used_[*id];
}

std::optional<Edge> EdgeLedger::claim(std::span<const Vertex> path) {
  constexpr char kTentative = 2;
  scratch_.clear();
  auto rollback = [&] {
    for (EdgeId id : scratch_) used_[id] = 0;
  };
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto id = host_->edge_id(path[i], path[i + 1]);
    if (!id) {
      rollback();
      throw Error(ErrorCode::kInvalidArgument, "ledger: step " + std::to_string(path[i]) + "-" +
                                                   std::to_string(path[i + 1]) +
                                                   " is not an edge");
    }
    if (used_[*id]) {
      rollback();
      return host_->edge(*id);
    }
    used_[*id] = kTentative;
    scratch_.push_back(*id);
  }
  for (EdgeId id : scratch_) {
    used_[id] = 1;
    ++used_at_[host_->edge(id).u];
    ++used_at_[host_->edge(id).v];
  }
  used_count_ += scratch_.size();
  return std::nullopt;
}

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::kPairingInvariant: return "pairing_invariant";
    case FailureKind::kRouteCount: return "route_count";
    case FailureKind::kEmptyRoute: return "empty_route";
    case FailureKind::kEndpointMismatch: return "endpoint_mismatch";
    case FailureKind::kNonEdgeStep: return "non_edge_step";
    case FailureKind::kDuplicatedEdge: return "duplicated_edge";
  }
  return "unknown";
}

std::size_t VerifyReport::count(FailureKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      failures.begin(), failures.end(), [kind](const VerifyFailure& f) { return f.kind == kind; }));
}

VerifyReport verify(const Graph& g, std::span<const TerminalPair> pairs, const PathSystem& system) {
  VerifyReport report;
  for (auto& problem : pairing_violations(pairs, g.num_vertices())) {
    report.failures.push_back({FailureKind::kPairingInvariant, {}, std::nullopt, std::move(problem)});
  }
  if (system.routes.size() != pairs.size()) {
    report.failures.push_back({FailureKind::kRouteCount, {}, std::nullopt,
                               std::to_string(system.routes.size()) + " routes for " +
                                   std::to_string(pairs.size()) + " pairs"});
  }

  // first route that used each edge, keyed by normalized endpoints
  std::unordered_map<std::uint64_t, std::size_t> owner;
  auto key = [](Edge e) { return (std::uint64_t{e.u} << 32) | e.v; };

  const std::size_t n = std::min(system.routes.size(), pairs.size());
  for (std::size_t i = 0; i < system.routes.size(); ++i) {
    const auto& route = system.routes[i].vertices;
    ++report.routes_checked;
    if (route.empty()) {
      report.failures.push_back({FailureKind::kEmptyRoute, {i}, std::nullopt, "route is empty"});
      continue;
    }
    if (i < n && (route.front() != pairs[i].first || route.back() != pairs[i].second)) {
      report.failures.push_back(
          {FailureKind::kEndpointMismatch, {i}, std::nullopt,
           "route runs " + std::to_string(route.front()) + "->" + std::to_string(route.back()) +
               ", pair is " + std::to_string(pairs[i].first) + "-" +
               std::to_string(pairs[i].second)});
    }
    for (std::size_t j = 0; j + 1 < route.size(); ++j) {
      const Vertex a = route[j];
      const Vertex b = route[j + 1];
      if (a >= g.num_vertices() || b >= g.num_vertices() || !g.has_edge(a, b)) {
        report.failures.push_back({FailureKind::kNonEdgeStep, {i}, Edge{a, b},
                                   "step " + std::to_string(a) + "-" + std::to_string(b) +
                                       " is not an edge"});
        continue;
      }
      const Edge e = Edge::normalized(a, b);
      auto [it, inserted] = owner.emplace(key(e), i);
      if (!inserted) {
        report.failures.push_back({FailureKind::kDuplicatedEdge, {it->second, i}, e,
                                   "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                       " used more than once"});
      }
    }
  }
  report.edges_used = owner.size();
  report.ok = report.failures.empty();
  return report;
}

}  // namespace pathpair
