#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pathpair/graph.hpp"
#include "pathpair/pairing.hpp"

namespace pathpair {

enum class PairOrder {
  kGiven,          // route unrouted pairs in input order
  kShortestFirst,  // next pair is the one with the smallest residual distance
};

struct OracleConfig {
  // Cap on the summed length of all routes. Unset means |E(G)|, which makes
  // the search complete.
  std::optional<std::size_t> max_total_path_length;
  std::uint64_t node_budget = 200'000'000;
  PairOrder pair_order = PairOrder::kShortestFirst;
};

enum class Verdict { kFeasible, kInfeasible, kBudgetExceeded };

const char* to_string(Verdict v);

struct SolveResult {
  Verdict verdict = Verdict::kInfeasible;
  std::optional<PathSystem> system;  // set iff feasible
  std::uint64_t nodes = 0;
  std::size_t final_bound = 0;  // total-length bound of the last deepening round
};

// Exact edge-disjoint routing by backtracking. Pairs are routed one at a time
// over simple paths; the summed length bound deepens from the sum of residual
// distances. Infeasible is only reported after an exhaustive search.
// Throws Error(kInvalidPairing) for terminals outside the graph.
SolveResult solve_exact(const Graph& g, const Pairing& pairing, const OracleConfig& cfg = {});

struct PairabilityResult {
  Verdict verdict = Verdict::kFeasible;  // kFeasible: every placement routes
  std::optional<Pairing> counter;        // first refuted placement
  std::uint64_t placements_checked = 0;
  std::uint64_t placements_unknown = 0;  // budget hits
  std::uint64_t nodes = 0;
};

// Checks every placement of k disjoint pairs. Placements are canonical: pairs
// are (smaller, larger) and listed by first terminal, so each placement is
// visited once. node_budget caps the nodes of the whole scan; the first
// placement that runs out stops it with kBudgetExceeded. Requires 2k <= |V(G)|.
PairabilityResult is_k_path_pairable(const Graph& g, std::size_t k, const OracleConfig& cfg = {});

struct PpLevel {
  std::size_t k = 0;
  PairabilityResult result;
};

struct PpResult {
  std::size_t pp = 0;
  bool complete = true;  // false when a level hit the budget
  std::vector<PpLevel> levels;
};

// Scans k = 1..k_max. Every level is evaluated so that monotonicity can be
// checked; a true verdict after a false one throws Error(kInternal). A budget
// hit stops the scan and returns the partial result.
PpResult pp_number(const Graph& g, std::size_t k_max, const OracleConfig& cfg = {});

}  // namespace pathpair
