#include <benchmark/benchmark.h>

#include "pathpair/bipartite_router.hpp"
#include "pathpair/constructions.hpp"
#include "pathpair/cut_condition.hpp"
#include "pathpair/layer_solver.hpp"
#include "pathpair/matching.hpp"
#include "pathpair/oracle.hpp"
#include "pathpair/product_router.hpp"
#include "pathpair/random.hpp"

namespace pathpair {
namespace {

void BM_KmmRoute(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Graph g = kmm_product(m);
  KmmOptions opts;
  opts.strict = m >= 104;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const Pairing p = random_full_pairing(g.num_vertices(), seed++);
    state.ResumeTiming();
    const KmmOutcome out = route_full(g, m, p, opts);
    benchmark::DoNotOptimize(out.ok);
  }
  state.counters["pairs"] = static_cast<double>(2 * m * m);
}
BENCHMARK(BM_KmmRoute)->Arg(32)->Arg(64)->Arg(104)->Unit(benchmark::kMillisecond);

void BM_KmmProduct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kmm_product(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_KmmProduct)->Arg(104)->Unit(benchmark::kMillisecond);

void BM_Theorem1Cycles(benchmark::State& state) {
  const Graph c9 = cycle(9);
  const OracleLayerSolver one(1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const Pairing p = random_pairing(81, 2, seed++);
    benchmark::DoNotOptimize(route_theorem1(c9, c9, one, one, p));
  }
}
BENCHMARK(BM_Theorem1Cycles);

void BM_Theorem2Cliques(benchmark::State& state) {
  const Graph k16 = complete(16);
  const CompleteLayerSolver two(2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const Pairing p = random_pairing(256, 4, seed++);
    benchmark::DoNotOptimize(route_theorem2(k16, k16, two, two, p));
  }
}
BENCHMARK(BM_Theorem2Cliques);

void BM_Sweep(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const BlownUpPath b = blown_up_path(2 * m, m);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const Pairing p = random_pairing(b.graph.num_vertices(), m * m, seed++);
    benchmark::DoNotOptimize(route_blownup_sweep(b, p));
  }
}
BENCHMARK(BM_Sweep)->Arg(4)->Arg(8)->Arg(16);

void BM_OracleCube(benchmark::State& state) {
  const Graph q3 = hypercube(3);
  for (auto _ : state) benchmark::DoNotOptimize(is_k_path_pairable(q3, 4));
}
BENCHMARK(BM_OracleCube)->Unit(benchmark::kMillisecond);

void BM_FullCut(benchmark::State& state) {
  const AdversarialInstance inst = cut_ok_not_pp(static_cast<std::size_t>(state.range(0)), CutVariant::kMatchedClique);
  for (auto _ : state) benchmark::DoNotOptimize(check_full_cut(inst.graph));
}
BENCHMARK(BM_FullCut)->Arg(6)->Arg(8);

void BM_HallMatching(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  Rng rng(1);
  BipartiteGraph g(n, n);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t r = 0; r < n; ++r)
      if (rng.below(2)) g.add_edge(u, r);
  for (auto _ : state) benchmark::DoNotOptimize(max_matching(g));
}
BENCHMARK(BM_HallMatching)->Arg(64)->Arg(1024);

}  // namespace
}  // namespace pathpair

BENCHMARK_MAIN();
