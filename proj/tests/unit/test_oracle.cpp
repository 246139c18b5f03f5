#include <gtest/gtest.h>

#include "dual_oracle.hpp"
#include "pathpair/error.hpp"
#include "pathpair/oracle.hpp"
#include "random_graph.hpp"

namespace pathpair {
namespace {

TEST(OracleTest, FourCycleCrossingPairs) {
  const SolveResult r = solve_exact(cycle(4), Pairing({{0, 2}, {1, 3}}));
  EXPECT_EQ(r.verdict, Verdict::kInfeasible);
  EXPECT_FALSE(r.system);
}

TEST(OracleTest, CompleteFourAllPairings) {
  const Graph k4 = complete(4);
  for (const Pairing& p : {Pairing({{0, 1}, {2, 3}}), Pairing({{0, 2}, {1, 3}}), Pairing({{0, 3}, {1, 2}})}) {
    const SolveResult r = solve_exact(k4, p);
    ASSERT_EQ(r.verdict, Verdict::kFeasible);
    EXPECT_TRUE(verify(k4, p, *r.system).ok);
  }
}

TEST(OracleTest, EmptyPairing) {
  const SolveResult r = solve_exact(path(3), Pairing{});
  EXPECT_EQ(r.verdict, Verdict::kFeasible);
  EXPECT_TRUE(r.system->routes.empty());
  EXPECT_THROW(solve_exact(path(3), Pairing({{0, 7}})), Error);
}

TEST(OracleTest, StarTwoPairs) {
  const PairabilityResult r = is_k_path_pairable(star(4), 2);
  EXPECT_EQ(r.verdict, Verdict::kFeasible);
  EXPECT_FALSE(r.counter);
  // placements of 2 disjoint pairs on 5 vertices: C(5,4) * 3
  EXPECT_EQ(r.placements_checked, 15u);
}

TEST(OracleTest, CubeIsFourPairable) {
  const PairabilityResult r = is_k_path_pairable(hypercube(3), 4);
  EXPECT_EQ(r.verdict, Verdict::kFeasible);
  EXPECT_EQ(r.placements_checked, 105u);
  EXPECT_EQ(r.placements_unknown, 0u);
}

TEST(OracleTest, CounterExampleOnFourCycle) {
  const PairabilityResult r = is_k_path_pairable(cycle(4), 2);
  ASSERT_EQ(r.verdict, Verdict::kInfeasible);
  ASSERT_TRUE(r.counter);
  EXPECT_EQ(*r.counter, Pairing({{0, 2}, {1, 3}}));
}

TEST(OracleTest, SmallPpNumbers) {
  EXPECT_EQ(pp_number(path(3), 1).pp, 1u);
  const PpResult c4 = pp_number(cycle(4), 2);
  EXPECT_EQ(c4.pp, 1u);
  EXPECT_TRUE(c4.complete);
  ASSERT_EQ(c4.levels.size(), 2u);
  EXPECT_EQ(c4.levels[1].result.verdict, Verdict::kInfeasible);
  EXPECT_EQ(pp_number(complete(6), 3).pp, 3u);
}

TEST(OracleTest, BudgetIsReported) {
  OracleConfig cfg;
  cfg.node_budget = 3;
  const SolveResult r = solve_exact(hypercube(4), Pairing({{0, 15}, {1, 14}, {2, 13}, {4, 11}, {8, 7}}), cfg);
  EXPECT_EQ(r.verdict, Verdict::kBudgetExceeded);
  EXPECT_FALSE(r.system);
}

TEST(OracleTest, ScanBudgetIsShared) {
  OracleConfig cfg;
  cfg.node_budget = 50;
  const PairabilityResult r = is_k_path_pairable(hypercube(4), 8, cfg);
  EXPECT_EQ(r.verdict, Verdict::kBudgetExceeded);
  EXPECT_EQ(r.placements_unknown, 1u);
  EXPECT_LE(r.nodes, 51u);
}

TEST(OracleTest, LengthCapOnlyShortensSearch) {
  OracleConfig cfg;
  cfg.max_total_path_length = 1;
  // the only route on P_3 has length 2; a capped search is not a refutation
  EXPECT_EQ(solve_exact(path(3), Pairing({{0, 2}}), cfg).verdict, Verdict::kBudgetExceeded);
  cfg.max_total_path_length = 2;
  EXPECT_EQ(solve_exact(path(3), Pairing({{0, 2}}), cfg).verdict, Verdict::kFeasible);
}

// The backtracking search and the path-enumeration oracle share no code and
// must give the same verdict, under both pair orders.
TEST(OracleTest, AgreesWithDualOracle) {
  Rng rng(31);
  std::size_t feasible = 0, infeasible = 0;
  for (int round = 0; round < 600; ++round) {
    const std::size_t n = 3 + rng.below(6);
    const Graph g = testing::random_graph(n, 25 + rng.below(50), rng);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(n / 2, 4));
    const Pairing p = random_pairing(n, k, rng.next());
    const bool expected = testing::DualOracle(g).feasible(p.pairs());
    for (PairOrder order : {PairOrder::kGiven, PairOrder::kShortestFirst}) {
      OracleConfig cfg;
      cfg.pair_order = order;
      const SolveResult r = solve_exact(g, p, cfg);
      ASSERT_NE(r.verdict, Verdict::kBudgetExceeded);
      ASSERT_EQ(r.verdict == Verdict::kFeasible, expected) << "round " << round;
      if (r.system) {
        ASSERT_TRUE(verify(g, p, *r.system).ok);
      }
    }
    (expected ? feasible : infeasible) += 1;
  }
  EXPECT_GT(feasible, 100u);
  EXPECT_GT(infeasible, 100u);
}

TEST(OracleTest, PairabilityAgreesWithDualOracle) {
  Rng rng(37);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 4 + rng.below(3);
    const Graph g = testing::random_graph(n, 50 + rng.below(40), rng);
    const std::size_t k = 1 + rng.below(n / 2);
    const PairabilityResult r = is_k_path_pairable(g, k);
    ASSERT_NE(r.verdict, Verdict::kBudgetExceeded);
    const testing::DualOracle dual(g);
    if (r.counter) {
      EXPECT_EQ(r.verdict, Verdict::kInfeasible);
      EXPECT_FALSE(dual.feasible(r.counter->pairs()));
    } else {
      // spot-check feasibility on random placements
      for (int t = 0; t < 20; ++t) EXPECT_TRUE(dual.feasible(random_pairing(n, k, rng.next()).pairs()));
    }
  }
}

}  // namespace
}  // namespace pathpair
