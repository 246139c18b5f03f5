// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (capped at 1 for ctest).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dual_oracle.hpp"
#include "instances.hpp"
#include "brute.hpp"
#include "pathpair/bipartite_router.hpp"
#include "pathpair/constructions.hpp"
#include "pathpair/cut_condition.hpp"
#include "pathpair/io.hpp"
#include "pathpair/layer_solver.hpp"
#include "pathpair/matching.hpp"
#include "pathpair/oracle.hpp"
#include "pathpair/product_router.hpp"
#include "pathpair/random.hpp"
#include "random_graph.hpp"
#include "recount.hpp"

using namespace pathpair;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  char time[32];
  std::snprintf(time, sizeof time, "%.1fs", seconds_since(t0));
  std::printf("%s %2d %s [%s] %s\n", o.pass ? "PASS" : "FAIL", id, title, time, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

// verify() and the recount must both accept.
bool routed(const Graph& g, const Pairing& p, const PathSystem& s, Outcome& o, const std::string& tag) {
  if (!verify(g, p, s).ok) {
    o.fail(tag + ": verify rejected");
    return false;
  }
  if (const auto why = testing::recount(g, p.pairs(), s); !why.empty()) {
    o.fail(tag + ": recount: " + why);
    return false;
  }
  return true;
}

struct KmmRun {
  std::uint64_t seed;
  bool ok;
  double secs;
  nlohmann::json metrics;
  std::string message;
};

std::vector<KmmRun> kmm_runs;

void all_placements(std::size_t n, std::size_t k, std::vector<TerminalPair>& acc, std::vector<char>& used,
                    Vertex from, std::vector<Pairing>& out) {
  if (acc.size() == k) {
    out.emplace_back(acc);
    return;
  }
  for (Vertex x = from; x < n; ++x) {
    if (used[x]) continue;
    used[x] = 1;
    for (Vertex y = x + 1; y < n; ++y) {
      if (used[y]) continue;
      used[y] = 1;
      acc.push_back({x, y});
      all_placements(n, k, acc, used, x + 1, out);
      acc.pop_back();
      used[y] = 0;
    }
    used[x] = 0;
  }
}

int run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

std::string slurp(const fs::path& p) { return io::read_file(p.string()); }

}  // namespace

int main() {
  report(1, "K_{104,104} x K_{104,104}, 10 full pairings", [] {
    Outcome o;
    const std::size_t m = 104;
    const Graph g = kmm_product(m);
    if (g.num_vertices() != 43264) o.fail("vertex count");
    double worst = 0;
    std::size_t good = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Pairing p = random_full_pairing(g.num_vertices(), seed);
      const auto t0 = Clock::now();
      const KmmOutcome out = route_full(g, m, p);
      const double secs = seconds_since(t0);
      worst = std::max(worst, secs);
      kmm_runs.push_back({seed, out.ok, secs, out.metrics, out.message});
      if (!out.ok) {
        o.fail("seed " + std::to_string(seed) + " failed in " + out.failed_phase + ": " + out.message);
        continue;
      }
      if (p.size() != 21632) o.fail("pairing size");
      if (routed(g, p, out.system, o, "seed " + std::to_string(seed))) ++good;
    }
    if (worst > 120) o.fail("slowest instance took " + std::to_string(worst) + "s");
    if (o.pass) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%zu/10 verified, |E|=%zu, slowest %.2fs", good, g.num_edges(), worst);
      o.detail = buf;
    }
    return o;
  });

  report(2, "Phase counting audits on every full-scale run", [] {
    Outcome o;
    if (kmm_runs.size() != 10) o.fail("criterion 1 runs missing");
    int hosted = 0, swarm_edges = 0, lineup_edges = 0;
    for (const auto& r : kmm_runs) {
      const auto& mt = r.metrics;
      if (!mt.contains("swarm") || !mt.contains("lineup")) {
        o.fail("seed " + std::to_string(r.seed) + " has no phase audit");
        continue;
      }
      const int h = mt["swarm"]["max_hosted"], se = mt["swarm"]["max_edges"];
      const int le = mt["lineup"]["max_edges_swarm_plus_out"];
      hosted = std::max(hosted, h);
      swarm_edges = std::max(swarm_edges, se);
      lineup_edges = std::max(lineup_edges, le);
    }
    if (hosted > 5) o.fail("a vertex hosts " + std::to_string(hosted) + " terminals");
    if (swarm_edges > 8) o.fail(std::to_string(swarm_edges) + " edges at a vertex after swarming");
    if (lineup_edges > 13) o.fail(std::to_string(lineup_edges) + " edges at a vertex after line-up");
    if (o.pass)
      o.detail = "max hosted " + std::to_string(hosted) + ", swarm edges " + std::to_string(swarm_edges) +
                 ", swarm+line-up edges " + std::to_string(lineup_edges);
    return o;
  });

  report(3, "Theorem 1 on C_9 x C_9 and K_16 x C_8", [] {
    Outcome o;
    const Graph c9 = cycle(9), k16 = complete(16), c8 = cycle(8);
    const Graph h1 = cartesian_product(c9, c9), h2 = cartesian_product(k16, c8);
    const OracleLayerSolver one(1);
    const CompleteLayerSolver two(2);
    std::size_t ok1 = 0, ok2 = 0, confirmed = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Pairing p = random_pairing(81, 2, seed);
      if (routed(h1, p, route_theorem1(c9, c9, one, one, p).system, o, "C9 seed " + std::to_string(seed))) ++ok1;
      if (seed < 10) {
        const SolveResult r = solve_exact(h1, p);
        if (r.verdict == Verdict::kFeasible && verify(h1, p, *r.system).ok) ++confirmed;
        else o.fail("oracle did not confirm seed " + std::to_string(seed));
      }
      const Pairing q = random_pairing(128, 3, seed);
      if (routed(h2, q, route_theorem1(k16, c8, two, one, q).system, o, "K16xC8 seed " + std::to_string(seed))) ++ok2;
    }
    if (o.pass)
      o.detail = std::to_string(ok1) + "/100 C9xC9, " + std::to_string(ok2) + "/100 K16xC8, oracle confirmed " +
                 std::to_string(confirmed) + "/10";
    return o;
  });

  report(4, "Theorem 2 on K_16 x K_16 with 4 pairs", [] {
    Outcome o;
    const Graph k16 = complete(16);
    const Graph host = cartesian_product(k16, k16);
    const CompleteLayerSolver two(2);
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Pairing p = random_pairing(256, 4, seed);
      if (routed(host, p, route_theorem2(k16, k16, two, two, p).system, o, "seed " + std::to_string(seed))) ++ok;
    }
    if (o.pass) o.detail = std::to_string(ok) + "/100";
    return o;
  });

  report(5, "Blown-up path sweep on G(8,4) and G(4,2)", [] {
    Outcome o;
    const BlownUpPath big = blown_up_path(8, 4);
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Pairing p = random_full_pairing(32, seed);
      if (p.size() != 16) o.fail("pairing size");
      if (routed(big.graph, p, route_blownup_sweep(big, p).system, o, "seed " + std::to_string(seed))) ++ok;
    }
    const BlownUpPath small = blown_up_path(4, 2);
    std::size_t agree = 0, total = 0;
    for (std::size_t k = 1; k <= 4; ++k) {
      std::vector<Pairing> placements;
      std::vector<TerminalPair> acc;
      std::vector<char> used(8, 0);
      all_placements(8, k, acc, used, 0, placements);
      for (const Pairing& p : placements) {
        ++total;
        const bool oracle = solve_exact(small.graph, p).verdict == Verdict::kFeasible;
        bool sweep = false;
        try {
          sweep = routed(small.graph, p, route_blownup_sweep(small, p).system, o, "G(4,2)");
        } catch (const Error&) {
        }
        if (sweep == oracle) ++agree;
        else o.fail("sweep and oracle disagree on a G(4,2) placement");
      }
    }
    if (o.pass)
      o.detail = std::to_string(ok) + "/100 on G(8,4), agreement " + std::to_string(agree) + "/" +
                 std::to_string(total) + " on G(4,2)";
    return o;
  });

  report(6, "Oracle ground truths: K_{1,4}, Q_3, C_4", [] {
    Outcome o;
    const auto t0 = Clock::now();
    const PairabilityResult s = is_k_path_pairable(star(4), 2);
    if (s.verdict != Verdict::kFeasible) o.fail("K_{1,4} not 2-pairable");
    const Graph q3 = hypercube(3);
    const PairabilityResult q = is_k_path_pairable(q3, 4);
    if (q.verdict != Verdict::kFeasible || q.placements_checked != 105) o.fail("Q_3 not confirmed over 105 placements");
    const PairabilityResult c = is_k_path_pairable(cycle(4), 2);
    if (c.verdict != Verdict::kInfeasible || !c.counter || *c.counter != Pairing({{0, 2}, {1, 3}}))
      o.fail("C_4 counter-pairing missing");
    // second opinion from path enumeration
    const testing::DualOracle dual_q3(q3);
    std::vector<Pairing> all;
    std::vector<TerminalPair> acc;
    std::vector<char> used(8, 0);
    all_placements(8, 4, acc, used, 0, all);
    for (const Pairing& p : all)
      if (!dual_q3.feasible(p.pairs())) o.fail("path enumeration refutes a Q_3 placement");
    if (testing::DualOracle(cycle(4)).feasible(Pairing({{0, 2}, {1, 3}}).pairs())) o.fail("C_4 disagreement");
    const double secs = seconds_since(t0);
    if (secs > 60) o.fail("took " + std::to_string(secs) + "s");
    if (o.pass) o.detail = "Q_3 placements " + std::to_string(q.placements_checked) + ", C_4 counter (0,2),(1,3)";
    return o;
  });

  report(7, "Cut-condition suite", [] {
    Outcome o;
    const AdversarialInstance inst = cut_ok_not_pp(6, CutVariant::kMatchedClique);
    const CutCheck cc = check_full_cut(inst.graph);
    if (inst.graph.num_vertices() != 12 || !cc.ok) o.fail("variant-2 k=6 fails the full cut check");
    if (testing::min_cut_slack(inst.graph, 6) < 0) o.fail("exhaustive slack disagrees");
    if (solve_exact(inst.graph, inst.pairing).verdict != Verdict::kInfeasible) o.fail("blocking pairing not refuted");
    if (testing::DualOracle(inst.graph).feasible(inst.pairing.pairs())) o.fail("path enumeration routes it");

    Rng rng(7);
    std::size_t matches = 0;
    for (int round = 0; round < 200; ++round) {
      const Graph g = testing::random_graph(1 + rng.below(8), 40, rng);
      const Graph h = testing::random_graph(1 + rng.below(8), 40, rng);
      std::vector<Vertex> gs, hs;
      for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (rng.below(2)) gs.push_back(v);
      for (Vertex v = 0; v < h.num_vertices(); ++v)
        if (rng.below(2)) hs.push_back(v);
      const ProductViolation pv =
          product_violation(gs.size(), induced_edge_count(g, gs), hs.size(), induced_edge_count(h, hs));
      // materialise the product and count induced edges there
      const Graph prod = cartesian_product(g, h);
      std::vector<Vertex> set;
      for (Vertex x : gs)
        for (Vertex y : hs) set.push_back(product_index({x, y}, h.num_vertices()));
      if (pv.product_edges == induced_edge_count(prod, set) &&
          pv.product_edges == testing::product_subgraph_edges(g, gs, h, hs))
        ++matches;
    }
    if (matches != 200) o.fail("product identity matched " + std::to_string(matches) + "/200");

    const GridViolation g2 = grid_violating_subgrid(2);
    if (g2.size != 20 || g2.boundary != 18) o.fail("d=2 grid values");
    for (std::size_t d = 2; d <= 6; ++d) {
      const GridViolation gv = grid_violating_subgrid(d);
      if (gv.size <= gv.boundary) o.fail("grid d=" + std::to_string(d) + " not violated");
    }
    const std::vector<std::size_t> cyc{7, 8};
    const TorusBox tb = torus_with_box(cyc, g2.sides);
    if (edge_boundary(tb.torus, tb.box) != 18) o.fail("materialised d=2 box boundary");
    if (o.pass)
      o.detail = "variant-2 cut ok over " + std::to_string(cc.subsets_examined) +
                 " subsets and refuted, identity 200/200, grid (20,18)";
    return o;
  });

  report(8, "Hall guarantee on 1000 dense bipartite graphs", [] {
    Outcome o;
    Rng rng(2024);
    std::size_t perfect = 0;
    for (int round = 0; round < 1000; ++round) {
      const std::size_t n = 1 + rng.below(64);
      const BipartiteGraph g = testing::dense_bipartite(n, rng);
      const auto res = perfect_or_witness(g);
      if (!std::holds_alternative<Matching>(res)) {
        o.fail("round " + std::to_string(round) + " has no perfect matching");
        continue;
      }
      const Matching& m = std::get<Matching>(res);
      bool valid = m.size == n;
      std::vector<char> taken(n, 0);
      for (std::uint32_t u = 0; u < n && valid; ++u) {
        const auto r = m.left_to_right[u];
        const auto& nb = g.neighbors(u);
        valid = r >= 0 && !taken[r] && std::find(nb.begin(), nb.end(), static_cast<std::uint32_t>(r)) != nb.end();
        if (valid) taken[r] = 1;
      }
      if (valid) ++perfect;
      else o.fail("round " + std::to_string(round) + " returned an invalid matching");
    }
    if (o.pass) o.detail = std::to_string(perfect) + "/1000 perfect";
    return o;
  });

  report(9, "Star product blocking instance on K_{1,2} x K_{1,2}", [] {
    Outcome o;
    const auto t0 = Clock::now();
    const AdversarialInstance inst = star_product_blocking(2, 2);
    const SolveResult r = solve_exact(inst.graph, inst.pairing);
    const double secs = seconds_since(t0);
    if (r.verdict != Verdict::kInfeasible) o.fail(std::string("verdict ") + to_string(r.verdict));
    if (testing::DualOracle(inst.graph).feasible(inst.pairing.pairs())) o.fail("path enumeration routes it");
    if (secs > 10) o.fail("took " + std::to_string(secs) + "s");
    if (o.pass) o.detail = "infeasible after " + std::to_string(r.nodes) + " nodes";
    return o;
  });

  report(10, "Seeded CLI runs repeat byte for byte", [] {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "pathpair_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::vector<std::vector<std::string>> runs{
        {"route", "--method", "thm1", "--graph-g", "gen:cycle:9", "--graph-h", "gen:cycle:9", "--solver-g", "oracle",
         "--solver-h", "oracle", "--a", "1", "--b", "1", "--seed", "3"},
        {"route", "--method", "thm2", "--graph-g", "gen:complete:16", "--graph-h", "gen:complete:16", "--solver-g",
         "complete", "--solver-h", "complete", "--a", "2", "--b", "2", "--seed", "5"},
        {"route", "--method", "sweep", "--k", "8", "--m", "4", "--seed", "11"},
        {"route", "--method", "kmm", "--m", "104", "--seed", "0"},
    };
    std::size_t identical = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      std::string first;
      for (int rep = 0; rep < 2; ++rep) {
        const fs::path paths = dir / ("paths" + std::to_string(i) + "_" + std::to_string(rep) + ".json");
        const fs::path man = dir / ("manifest" + std::to_string(i) + "_" + std::to_string(rep) + ".json");
        std::vector<std::string> args{"-q"};
        args.insert(args.end(), runs[i].begin(), runs[i].end());
        args.insert(args.end(), {"--out", paths.string(), "--manifest", man.string()});
        if (const int code = run_cli(args); code != 0) {
          o.fail("run " + std::to_string(i) + " exited " + std::to_string(code));
          break;
        }
        const std::string bytes = slurp(paths) + "\x1f" + slurp(man);
        if (rep == 0) first = bytes;
        else if (bytes == first) ++identical;
        else o.fail("run " + std::to_string(i) + " differs between repeats");
      }
    }
    fs::remove_all(dir);
    if (o.pass) o.detail = std::to_string(identical) + "/" + std::to_string(runs.size()) + " runs identical";
    return o;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
