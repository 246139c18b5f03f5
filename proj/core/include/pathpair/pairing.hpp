#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathpair/graph.hpp"

namespace pathpair {

struct TerminalPair {
  Vertex first = 0;
  Vertex second = 0;
  friend auto operator<=>(const TerminalPair&, const TerminalPair&) = default;
};

// A list of terminal pairs over pairwise-distinct vertices. Construction
// rejects a pair (v,v) and any vertex appearing twice.
class Pairing {
 public:
  Pairing() = default;
  explicit Pairing(std::vector<TerminalPair> pairs);

  // Validates that every terminal is below `vertex_count` as well.
  static Pairing checked(std::vector<TerminalPair> pairs, std::size_t vertex_count);

  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  std::span<const TerminalPair> pairs() const noexcept { return pairs_; }
  const TerminalPair& operator[](std::size_t i) const { return pairs_[i]; }

  friend bool operator==(const Pairing&, const Pairing&) = default;

 private:
  std::vector<TerminalPair> pairs_;
};

// Human-readable description of every invariant violation in `pairs`, empty
// when the list would be accepted by Pairing.
std::vector<std::string> pairing_violations(std::span<const TerminalPair> pairs,
                                            std::optional<std::size_t> vertex_count);

// Vertex sequence of one route. A single vertex is a legal (degenerate) path.
struct Path {
  std::vector<Vertex> vertices;

  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  friend bool operator==(const Path&, const Path&) = default;
};

Path reversed(Path p);

// Joins `tail` onto `head`; tail must begin where head ends.
Path concatenate(Path head, const Path& tail);

// Routes index-aligned with Pairing::pairs().
struct PathSystem {
  std::vector<Path> routes;
  friend bool operator==(const PathSystem&, const PathSystem&) = default;
};

// Single-use budget of the host graph's edges. Confined to one routing job.
class EdgeLedger {
 public:
  explicit EdgeLedger(const Graph& host);

  // Claims every edge of `path` or none of them. Returns the first conflicting
  // edge (already used, or repeated inside the path) when refusing. Throws
  // Error(kInvalidArgument) if a step is not an edge of the host.
  std::optional<Edge> claim(std::span<const Vertex> path);
  std::optional<Edge> claim(const Path& path) { return claim(path.vertices); }

  bool is_used(EdgeId e) const { return used_[e] != 0; }
  bool is_used(Vertex u, Vertex v) const;
  bool is_free(Vertex u, Vertex v) const;  // an edge of the host and not used
  std::size_t used_count() const noexcept { return used_count_; }
  std::size_t used_at(Vertex v) const { return used_at_[v]; }
  const Graph& host() const noexcept { return *host_; }

 private:
  const Graph* host_;
  std::vector<char> used_;
  std::vector<std::uint32_t> used_at_;
  std::size_t used_count_ = 0;
  std::vector<EdgeId> scratch_;
};

enum class FailureKind {
  kPairingInvariant,
  kRouteCount,
  kEmptyRoute,
  kEndpointMismatch,
  kNonEdgeStep,
  kDuplicatedEdge,
};

const char* to_string(FailureKind kind);

struct VerifyFailure {
  FailureKind kind = FailureKind::kPairingInvariant;
  std::vector<std::size_t> routes;  // offending route indices
  std::optional<Edge> edge;
  std::string detail;
};

struct VerifyReport {
  bool ok = true;
  std::size_t routes_checked = 0;
  std::size_t edges_used = 0;
  std::vector<VerifyFailure> failures;

  std::size_t count(FailureKind kind) const;
};

// Independent certificate check. Never throws on bad input; every problem
// becomes a report entry.
VerifyReport verify(const Graph& g, std::span<const TerminalPair> pairs, const PathSystem& system);
inline VerifyReport verify(const Graph& g, const Pairing& pairing, const PathSystem& system) {
  return verify(g, pairing.pairs(), system);
}

}  // namespace pathpair
