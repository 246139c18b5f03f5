#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pathpair/constructions.hpp"
#include "pathpair/graph.hpp"
#include "pathpair/layer_solver.hpp"
#include "pathpair/pairing.hpp"

namespace pathpair {

struct RouteOptions {
  // Strict mode enforces the theorem's size/count hypotheses and the phase
  // postconditions. Unchecked mode skips them and routes anyway; failures
  // still surface as errors, never as unverified output.
  bool strict = true;
};

struct PhaseRecord {
  std::string phase;
  nlohmann::json detail;
};

struct RoutePlan {
  std::string method;
  std::vector<PhaseRecord> phases;
};

struct RouteResult {
  PathSystem system;
  RoutePlan plan;
  VerifyReport report;  // always ok; routers throw before returning a bad system
};

// Theorem 1 router on G□H, a = solver_g.capability(), b = solver_h.capability().
// Strict preconditions: |pairing| <= a+b, |V(G)| >= 8a, |V(H)| >= 8b (after
// swapping factors so that a >= b). Terminals are vertices of
// cartesian_product(G, H). Throws Error(kPreconditionViolated) or
// Error(kLayerSolverFailed).
RouteResult route_theorem1(const Graph& g, const Graph& h, const LayerSolver& solver_g,
                           const LayerSolver& solver_h, const Pairing& pairing,
                           const RouteOptions& opts = {});

// Theorem 2 router: strict preconditions 2s < (a+1)(b+1) and
// |V(G)|, |V(H)| >= 4s for s = |pairing|.
RouteResult route_theorem2(const Graph& g, const Graph& h, const LayerSolver& solver_g,
                           const LayerSolver& solver_h, const Pairing& pairing,
                           const RouteOptions& opts = {});

// Left-to-right greedy sweep on G(k,m). Strict preconditions: k >= 2m,
// |pairing| <= m^2. Throws Error(kSweepInvariantViolated) if a vertex would
// host more than m open tokens.
RouteResult route_blownup_sweep(const BlownUpPath& b, const Pairing& pairing,
                                const RouteOptions& opts = {});

nlohmann::json to_json(const RoutePlan& plan);

}  // namespace pathpair
