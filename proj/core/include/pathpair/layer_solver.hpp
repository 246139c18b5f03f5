#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathpair/graph.hpp"
#include "pathpair/oracle.hpp"
#include "pathpair/pairing.hpp"

namespace pathpair {

// Executable stand-in for "this factor is k-path-pairable". `usable` is
// indexed by layer edge id; returned paths are in layer vertex ids, use only
// usable edges and are pairwise edge-disjoint. A solver may fail only when
// asked for more than capability() pairs or when too many edges are gone.
class LayerSolver {
 public:
  virtual ~LayerSolver() = default;
  virtual std::size_t capability() const = 0;
  virtual std::string name() const = 0;
  virtual std::optional<std::vector<Path>> solve(const Graph& layer, std::span<const char> usable,
                                                 std::span<const TerminalPair> pairs) const = 0;
};

// Exact search on the usable subgraph. For small layers of any shape.
class OracleLayerSolver final : public LayerSolver {
 public:
  explicit OracleLayerSolver(std::size_t capability, OracleConfig cfg = {})
      : capability_(capability), cfg_(cfg) {}
  std::size_t capability() const override { return capability_; }
  std::string name() const override { return "oracle"; }
  std::optional<std::vector<Path>> solve(const Graph& layer, std::span<const char> usable,
                                         std::span<const TerminalPair> pairs) const override;

 private:
  std::size_t capability_;
  OracleConfig cfg_;
};

// Complete-graph layers: the direct edge when usable, otherwise the first
// free two-edge detour. K_n is floor(n/2)-path-pairable; the declared
// capability may be lower.
class CompleteLayerSolver final : public LayerSolver {
 public:
  explicit CompleteLayerSolver(std::size_t capability) : capability_(capability) {}
  std::size_t capability() const override { return capability_; }
  std::string name() const override { return "complete"; }
  std::optional<std::vector<Path>> solve(const Graph& layer, std::span<const char> usable,
                                         std::span<const TerminalPair> pairs) const override;

 private:
  std::size_t capability_;
};

// Blown-up path layers G(k,m), capability m^2. Needs a fresh layer.
class SweepLayerSolver final : public LayerSolver {
 public:
  SweepLayerSolver(std::size_t k, std::size_t m) : k_(k), m_(m) {}
  std::size_t capability() const override { return m_ * m_; }
  std::string name() const override { return "sweep"; }
  std::optional<std::vector<Path>> solve(const Graph& layer, std::span<const char> usable,
                                         std::span<const TerminalPair> pairs) const override;

 private:
  std::size_t k_;
  std::size_t m_;
};

}  // namespace pathpair
