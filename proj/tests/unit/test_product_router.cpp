#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "pathpair/constructions.hpp"
#include "pathpair/error.hpp"
#include "pathpair/layer_solver.hpp"
#include "pathpair/oracle.hpp"
#include "pathpair/product_router.hpp"
#include "pathpair/random.hpp"

namespace pathpair {
namespace {

std::set<std::string> cases_of(const RouteResult& r) {
  std::set<std::string> out;
  for (const auto& ph : r.plan.phases)
    if (ph.phase == "redistribution") out.insert(ph.detail.at("case").get<std::string>());
  return out;
}

void expect_code(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(LayerSolverTest, CompleteUsesDetours) {
  const Graph k5 = complete(5);
  std::vector<char> usable(k5.num_edges(), 1);
  usable[*k5.edge_id(0, 1)] = 0;
  const std::vector<TerminalPair> pairs{{0, 1}, {2, 3}};
  const auto paths = CompleteLayerSolver(2).solve(k5, usable, pairs);
  ASSERT_TRUE(paths);
  EXPECT_EQ((*paths)[0].vertices.size(), 3u);
  EXPECT_EQ((*paths)[1].vertices, (std::vector<Vertex>{2, 3}));
  PathSystem s{*paths};
  EXPECT_TRUE(verify(k5, pairs, s).ok);
}

TEST(LayerSolverTest, OracleRespectsUsableEdges) {
  const Graph c4 = cycle(4);
  std::vector<char> usable(c4.num_edges(), 1);
  usable[*c4.edge_id(0, 1)] = 0;
  const std::vector<TerminalPair> pairs{{0, 1}};
  const auto paths = OracleLayerSolver(1).solve(c4, usable, pairs);
  ASSERT_TRUE(paths);
  EXPECT_EQ((*paths)[0].vertices, (std::vector<Vertex>{0, 3, 2, 1}));
  usable[*c4.edge_id(2, 3)] = 0;
  EXPECT_FALSE(OracleLayerSolver(1).solve(c4, usable, pairs));
}

TEST(Theorem1Test, CycleSquared) {
  const Graph c9 = cycle(9);
  const OracleLayerSolver solver(1);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Pairing p = random_pairing(81, 2, seed);
    const RouteResult r = route_theorem1(c9, c9, solver, solver, p);
    ASSERT_TRUE(verify(cartesian_product(c9, c9), p, r.system).ok) << seed;
  }
}

TEST(Theorem1Test, CliqueTimesCycle) {
  const Graph k16 = complete(16), c8 = cycle(8);
  const CompleteLayerSolver sg(2);
  const OracleLayerSolver sh(1);
  const Graph host = cartesian_product(k16, c8);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Pairing p = random_pairing(128, 3, seed);
    ASSERT_TRUE(verify(host, p, route_theorem1(k16, c8, sg, sh, p).system).ok) << seed;
    // the factors may come in either order
    ASSERT_TRUE(verify(cartesian_product(c8, k16), p, route_theorem1(c8, k16, sh, sg, p).system).ok);
  }
}

// Terminals are placed by hand so that zero, one, two and three G-layers
// start out overloaded.
TEST(Theorem1Test, RedistributionCases) {
  std::set<std::string> seen;
  Rng rng(41);
  auto at = [](Vertex g, Vertex h, std::size_t nh) { return static_cast<Vertex>(g * nh + h); };
  auto distinct_g = [&](std::size_t count, std::size_t n) {
    std::vector<Vertex> out;
    std::set<Vertex> used;
    while (out.size() < count) {
      const auto v = static_cast<Vertex>(rng.below(n));
      if (used.insert(v).second) out.push_back(v);
    }
    return out;
  };
  for (int round = 0; round < 20; ++round) {
    {  // a=b=1: both pairs in one layer
      const Graph c9 = cycle(9);
      const OracleLayerSolver s(1);
      const auto gs = distinct_g(4, 9);
      const Pairing p({{at(gs[0], 3, 9), at(gs[1], 3, 9)}, {at(gs[2], 3, 9), at(gs[3], 3, 9)}});
      const RouteResult r = route_theorem1(c9, c9, s, s, p);
      for (const auto& c : cases_of(r)) seen.insert(c);
    }
    {  // a=2, b=1: two layers with three types each
      const Graph k16 = complete(16), c8 = cycle(8);
      const CompleteLayerSolver sg(2);
      const OracleLayerSolver sh(1);
      const auto gs = distinct_g(6, 16);
      const Pairing p({{at(gs[0], 0, 8), at(gs[1], 1, 8)},
                       {at(gs[2], 0, 8), at(gs[3], 1, 8)},
                       {at(gs[4], 0, 8), at(gs[5], 1, 8)}});
      for (const auto& c : cases_of(route_theorem1(k16, c8, sg, sh, p))) seen.insert(c);
    }
    {  // a=b=3: three layers with four types each
      const Graph k24 = complete(24);
      const CompleteLayerSolver s(3);
      const auto gs = distinct_g(12, 24);
      const Pairing p({{at(gs[0], 0, 24), at(gs[4], 1, 24)},
                       {at(gs[1], 0, 24), at(gs[5], 1, 24)},
                       {at(gs[2], 0, 24), at(gs[8], 2, 24)},
                       {at(gs[3], 0, 24), at(gs[9], 2, 24)},
                       {at(gs[6], 1, 24), at(gs[10], 2, 24)},
                       {at(gs[7], 1, 24), at(gs[11], 2, 24)}});
      const RouteResult r = route_theorem1(k24, k24, s, s, p);
      for (const auto& c : cases_of(r)) seen.insert(c);
      EXPECT_TRUE(cases_of(r).count("case3"));
    }
    {  // spread out
      const Graph c9 = cycle(9);
      const OracleLayerSolver s(1);
      const Pairing p({{at(0, 0, 9), at(4, 4, 9)}, {at(2, 6, 9), at(7, 1, 9)}});
      for (const auto& c : cases_of(route_theorem1(c9, c9, s, s, p))) seen.insert(c);
    }
  }
  for (const char* c : {"none", "case1", "case2", "case3"}) EXPECT_TRUE(seen.count(c)) << c;
}

TEST(Theorem1Test, Preconditions) {
  const Graph c9 = cycle(9);
  const OracleLayerSolver s(1);
  expect_code(ErrorCode::kPreconditionViolated,
              [&] { route_theorem1(c9, c9, s, s, random_pairing(81, 3, 0)); });
  const Graph c7 = cycle(7);
  expect_code(ErrorCode::kPreconditionViolated,
              [&] { route_theorem1(c7, c9, s, s, random_pairing(63, 2, 0)); });
  expect_code(ErrorCode::kPreconditionViolated,
              [&] { route_theorem1(c9, c9, s, s, Pairing({{0, 81}})); });
  // unchecked mode still verifies whatever it returns
  RouteOptions loose;
  loose.strict = false;
  const Pairing small = random_pairing(49, 2, 4);
  try {
    const RouteResult r = route_theorem1(c7, c7, s, s, small, loose);
    EXPECT_TRUE(verify(cartesian_product(c7, c7), small, r.system).ok);
  } catch (const Error&) {
  }
  const RouteResult empty = route_theorem1(c9, c9, s, s, Pairing{});
  EXPECT_TRUE(empty.system.routes.empty());
}

TEST(Theorem2Test, CliqueSquared) {
  const Graph k16 = complete(16);
  const CompleteLayerSolver s(2);
  const Graph host = cartesian_product(k16, k16);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Pairing p = random_pairing(256, 4, seed);
    ASSERT_TRUE(verify(host, p, route_theorem2(k16, k16, s, s, p).system).ok) << seed;
  }
  expect_code(ErrorCode::kPreconditionViolated,
              [&] { route_theorem2(k16, k16, s, s, random_pairing(256, 5, 0)); });
}

TEST(Theorem2Test, ClusteredInOneLayer) {
  const Graph k16 = complete(16);
  const CompleteLayerSolver s(2);
  const Pairing p({{0, 16}, {32, 48}, {64, 80}, {96, 112}});  // all in the layer h = 0
  EXPECT_TRUE(verify(cartesian_product(k16, k16), p, route_theorem2(k16, k16, s, s, p).system).ok);
}

TEST(SweepTest, EightByFour) {
  const BlownUpPath b = blown_up_path(8, 4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Pairing p = random_full_pairing(32, seed);
    ASSERT_EQ(p.size(), 16u);
    ASSERT_TRUE(verify(b.graph, p, route_blownup_sweep(b, p).system).ok) << seed;
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Pairing p = random_pairing(32, 1 + seed % 16, seed);
    ASSERT_TRUE(verify(b.graph, p, route_blownup_sweep(b, p).system).ok) << seed;
  }
}

void all_pairings(std::vector<Vertex> free, std::vector<TerminalPair>& acc,
                  std::vector<std::vector<TerminalPair>>& out) {
  if (free.empty()) {
    out.push_back(acc);
    return;
  }
  const Vertex x = free.front();
  for (std::size_t i = 1; i < free.size(); ++i) {
    std::vector<Vertex> rest;
    for (std::size_t j = 1; j < free.size(); ++j)
      if (j != i) rest.push_back(free[j]);
    acc.push_back({x, free[i]});
    all_pairings(rest, acc, out);
    acc.pop_back();
  }
}

TEST(SweepTest, AgreesWithOracleOnFourByTwo) {
  const BlownUpPath b = blown_up_path(4, 2);
  std::vector<std::vector<TerminalPair>> placements;
  std::vector<TerminalPair> acc;
  all_pairings({0, 1, 2, 3, 4, 5, 6, 7}, acc, placements);
  ASSERT_EQ(placements.size(), 105u);
  for (const auto& pl : placements) {
    const Pairing p(pl);
    const bool oracle = solve_exact(b.graph, p).verdict == Verdict::kFeasible;
    bool sweep = true;
    try {
      route_blownup_sweep(b, p);
    } catch (const Error&) {
      sweep = false;
    }
    EXPECT_EQ(sweep, oracle);
    EXPECT_TRUE(sweep);
  }
}

TEST(SweepTest, Preconditions) {
  expect_code(ErrorCode::kPreconditionViolated,
              [] { route_blownup_sweep(blown_up_path(5, 3), random_pairing(15, 2, 0)); });
  expect_code(ErrorCode::kPreconditionViolated,
              [] { route_blownup_sweep(blown_up_path(8, 2), random_pairing(16, 5, 0)); });
  EXPECT_TRUE(route_blownup_sweep(blown_up_path(4, 2), Pairing{}).system.routes.empty());
}

}  // namespace
}  // namespace pathpair
