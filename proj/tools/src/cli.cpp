#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "digest.hpp"
#include "pathpair/bipartite_router.hpp"
#include "pathpair/constructions.hpp"
#include "pathpair/cut_condition.hpp"
#include "pathpair/error.hpp"
#include "pathpair/graph.hpp"
#include "pathpair/io.hpp"
#include "pathpair/layer_solver.hpp"
#include "pathpair/oracle.hpp"
#include "pathpair/pairing.hpp"
#include "pathpair/product_router.hpp"
#include "pathpair/random.hpp"

#ifndef PATHPAIR_VERSION
#define PATHPAIR_VERSION "0.0.0"
#endif

namespace pathpair::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidGraph:
    case ErrorCode::kInvalidPairing:
    case ErrorCode::kMissingLabels:
    case ErrorCode::kParse:
    case ErrorCode::kPreconditionViolated:
      return kExitUsage;
    case ErrorCode::kInstanceTooLarge:
      return kExitBudget;
    default:
      return kExitFailed;
  }
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// JSON-lines logger on the error stream.
class Log {
 public:
  Log(std::ostream& err, bool quiet) : err_(err), quiet_(quiet) {}
  void info(const std::string& event, json fields = json::object()) const {
    if (!quiet_) emit("info", event, std::move(fields));
  }
  void error(const std::string& event, json fields = json::object()) const {
    emit("error", event, std::move(fields));
  }

 private:
  void emit(const char* level, const std::string& event, json fields) const {
    fields["level"] = level;
    fields["event"] = event;
    err_ << fields.dump() << '\n';
  }
  std::ostream& err_;
  bool quiet_;
};

// State of one invocation; everything that goes into the run manifest.
struct Run {
  std::ostream& out;
  std::ostream& err;
  Log log;
  std::string command;
  json params = json::object();
  json inputs = json::object();
  json outputs = json::object();
  json outcome = json::object();
  std::optional<std::uint64_t> seed;

  std::string read_input(const std::string& key, const std::string& path) {
    std::string data = io::read_file(path);
    inputs[key] = "sha256:" + sha256_hex(data);
    return data;
  }

  // Sends `text` to `path` (stdout when empty) and records its digest.
  void emit(const std::string& key, const std::string& text, const std::string& path) {
    outputs[key] = "sha256:" + sha256_hex(text);
    if (path.empty() || path == "-") {
      out << text;
    } else {
      io::write_file(path, text);
    }
  }

  json manifest(int code) const {
    return {{"tool", "pathpair"}, {"version", PATHPAIR_VERSION}, {"command", command},
            {"parameters", params}, {"seed", seed ? json(*seed) : json(nullptr)},
            {"inputs", inputs},     {"outputs", outputs},         {"outcome", outcome},
            {"exit_code", code}};
  }
};

std::string text_of(const json& j) { return j.dump() + "\n"; }

std::vector<std::size_t> split_numbers(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in '" + s + "'");
    }
  }
  return out;
}

void require_positive(const std::string& family, const std::vector<std::size_t>& args,
                      std::size_t count, bool allow_zero = false) {
  if (args.size() != count) {
    throw UsageError(family + " takes " + std::to_string(count) + " parameter(s)");
  }
  for (std::size_t v : args)
    if (v == 0 && !allow_zero) throw UsageError(family + ": parameters must be positive");
}

// Plain graph families shared by `gen` and the gen:<family>:<args> graph spec.
std::optional<Graph> plain_family(const std::string& family, const std::vector<std::size_t>& a) {
  if (family == "complete") return require_positive(family, a, 1), complete(a[0]);
  if (family == "complete_bipartite") return require_positive(family, a, 2), complete_bipartite(a[0], a[1]);
  if (family == "path") return require_positive(family, a, 1), path(a[0]);
  if (family == "cycle") return require_positive(family, a, 1), cycle(a[0]);
  if (family == "star") return require_positive(family, a, 1), star(a[0]);
  if (family == "hypercube") return require_positive(family, a, 1, true), hypercube(a[0]);
  if (family == "blownup") return require_positive(family, a, 2), blown_up_path(a[0], a[1]).graph;
  if (family == "kmm") return require_positive(family, a, 1), kmm_product(a[0]);
  return std::nullopt;
}

// A graph argument is a file (JSON graph, a gen wrapper with a "graph" key,
// or an edge list) or an inline generator "gen:<family>:<n[,m]>".
Graph load_graph(Run& run, const std::string& key, const std::string& spec) {
  if (spec.rfind("gen:", 0) == 0) {
    const std::string rest = spec.substr(4);
    const auto colon = rest.find(':');
    const std::string family = rest.substr(0, colon);
    const auto args = colon == std::string::npos ? std::vector<std::size_t>{}
                                                 : split_numbers(rest.substr(colon + 1));
    auto g = plain_family(family, args);
    if (!g) throw UsageError("unknown graph family '" + family + "'");
    return std::move(*g);
  }
  const std::string text = run.read_input(key, spec);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j = io::parse(text, spec);
    if (j.contains("graph")) j = j.at("graph");
    return io::graph_from_json(j);
  }
  return io::graph_from_edge_list(text);
}

Pairing load_pairing(Run& run, const std::string& path, std::size_t n) {
  const json j = io::parse(run.read_input("pairs", path), path);
  return Pairing::checked(io::pairs_from_json(j), n);
}

std::uint64_t node_budget(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PATHPAIR_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("PATHPAIR_BUDGET is not a number: ") + env);
    }
  }
  return OracleConfig{}.node_budget;
}

// Records every option given on the command line, minus output destinations.
void record_params(const CLI::App& sub, json& params) {
  static const std::vector<std::string> kSkip = {"out", "pairs-out", "manifest", "trace",
                                                 "report", "help", "quiet"};
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0) continue;
    std::string name = opt->get_single_name();
    if (std::find(kSkip.begin(), kSkip.end(), name) != kSkip.end()) continue;
    const auto& res = opt->results();
    if (opt->get_expected_min() == 0) {
      params[name] = true;
    } else if (res.size() == 1) {
      params[name] = res.front();
    } else {
      params[name] = res;
    }
  }
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::optional<std::size_t> n, a, b, k, m, d, N;
  std::string variant = "matched";
  std::string format = "json";
  std::string out, pairs_out;
};

std::string format_graph(const Graph& g, const std::string& format) {
  if (format == "dot") return io::to_dot(g);
  if (format == "edges") return io::to_edge_list(g);
  return text_of(io::to_json(g));
}

std::size_t need(const std::optional<std::size_t>& v, const char* flag, const std::string& family) {
  if (!v) throw UsageError(family + " needs --" + flag);
  return *v;
}

int cmd_gen(Run& run, const GenArgs& a) {
  const std::string& f = a.family;
  if (f == "grid") {
    const auto gv = grid_violating_subgrid(need(a.d, "d", f));
    run.outcome = {{"size", gv.size}, {"boundary", gv.boundary}};
    run.emit("descriptor",
             text_of({{"d", *a.d},
                      {"sides", gv.sides},
                      {"size", gv.size},
                      {"boundary", gv.boundary},
                      {"violated", gv.boundary < gv.size},
                      {"pp_upper_bound", gv.size - 1}}),
             a.out);
    return kExitOk;
  }
  std::optional<AdversarialInstance> inst;
  std::optional<Graph> g;
  if (f == "starblock") {
    inst = star_product_blocking(need(a.b, "b", f), need(a.d, "d", f));
  } else if (f == "cutexample") {
    if (a.variant == "matched") {
      inst = cut_ok_not_pp(need(a.k, "k", f), CutVariant::kMatchedClique);
    } else {
      const std::size_t k = need(a.k, "k", f);
      inst = cut_ok_not_pp(k, CutVariant::kCliqueTail, a.N.value_or(2 * k));
    }
  } else {
    std::vector<std::size_t> args;
    if (f == "complete" || f == "star") args = {need(a.n, "n", f)};
    else if (f == "complete_bipartite") args = {need(a.a, "a", f), need(a.b, "b", f)};
    else if (f == "path" || f == "cycle") args = {need(a.k, "k", f)};
    else if (f == "hypercube") args = {need(a.d, "d", f)};
    else if (f == "blownup") args = {need(a.k, "k", f), need(a.m, "m", f)};
    else if (f == "kmm") args = {need(a.m, "m", f)};
    g = plain_family(f, args);
  }
  if (inst) {
    const std::string claim = inst->claim == Claim::kInfeasible ? "infeasible" : "feasible";
    run.outcome = {{"n", inst->graph.num_vertices()}, {"edges", inst->graph.num_edges()},
                   {"pairs", inst->pairing.size()},   {"claim", claim}};
    if (!a.pairs_out.empty()) {
      run.emit("graph", format_graph(inst->graph, a.format), a.out);
      run.emit("pairs", text_of(io::to_json(inst->pairing.pairs())), a.pairs_out);
    } else {
      if (a.format != "json") throw UsageError("--format " + a.format + " needs --pairs-out");
      run.emit("instance",
               text_of({{"graph", io::to_json(inst->graph)},
                        {"pairs", io::to_json(inst->pairing.pairs())["pairs"]},
                        {"claim", claim},
                        {"description", inst->description}}),
               a.out);
    }
    return kExitOk;
  }
  run.outcome = {{"n", g->num_vertices()}, {"edges", g->num_edges()}};
  run.emit("graph", format_graph(*g, a.format), a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ProductArgs {
  std::string g, h, out;
};

int cmd_product(Run& run, const ProductArgs& a) {
  const Graph p = cartesian_product(load_graph(run, "graph-g", a.g), load_graph(run, "graph-h", a.h));
  run.outcome = {{"n", p.num_vertices()}, {"edges", p.num_edges()}};
  run.emit("graph", text_of(io::to_json(p)), a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PairsArgs {
  std::string graph, out;
  bool full = false;
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
};

int cmd_pairs(Run& run, const PairsArgs& a) {
  const Graph g = load_graph(run, "graph", a.graph);
  run.seed = a.seed;
  if (a.full == a.k.has_value()) throw UsageError("give exactly one of --full and --k");
  const Pairing p = a.full ? random_full_pairing(g.num_vertices(), a.seed)
                           : random_pairing(g.num_vertices(), *a.k, a.seed);
  run.outcome = {{"pairs", p.size()}};
  run.emit("pairs", text_of(io::to_json(p.pairs())), a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct RouteArgs {
  std::string method;
  std::string graph_g, graph_h, solver_g = "oracle", solver_h = "oracle";
  std::optional<std::size_t> a, b, k, m, count;
  std::string pairs, pairs_out;
  std::uint64_t seed = 0;
  bool unchecked = false, explore = false;
  std::string encoding = "plain";
  std::string out, trace, report;
  std::optional<std::uint64_t> budget;
};

std::unique_ptr<LayerSolver> make_solver(const std::string& kind, const Graph& factor,
                                         std::optional<std::size_t> cap, const char* flag,
                                         const OracleConfig& cfg) {
  if (kind == "oracle") {
    if (!cap) throw UsageError(std::string("the oracle solver needs --") + flag);
    return std::make_unique<OracleLayerSolver>(*cap, cfg);
  }
  if (kind == "complete") {
    return std::make_unique<CompleteLayerSolver>(cap.value_or(factor.num_vertices() / 2));
  }
  // sweep: class count and size from the blown-up path labels
  std::size_t k = 0;
  for (const auto& l : factor.labels()) {
    if (const auto* t = std::get_if<ClassTag>(&l)) k = std::max<std::size_t>(k, t->cls + 1);
  }
  if (k == 0 || factor.num_vertices() % k != 0) {
    throw UsageError("the sweep solver needs a blown-up path factor (class labels)");
  }
  const std::size_t m = factor.num_vertices() / k;
  if (cap && *cap != m * m) throw UsageError("the sweep solver has capability m^2 = " + std::to_string(m * m));
  return std::make_unique<SweepLayerSolver>(k, m);
}

class TraceSink {
 public:
  TraceSink(const std::string& path, std::ostream& err) : err_(err) {
    if (!path.empty() && path != "-") file_.open(path, std::ios::binary);
    enabled_ = !path.empty();
    if (enabled_ && path != "-" && !file_) throw UsageError("cannot write " + path);
  }
  void line(const json& j) {
    if (!enabled_) return;
    (file_.is_open() ? static_cast<std::ostream&>(file_) : err_) << j.dump() << '\n';
  }

 private:
  std::ostream& err_;
  std::ofstream file_;
  bool enabled_ = false;
};

int finish_route(Run& run, const RouteArgs& a, const Graph& g, const Pairing& p,
                 const PathSystem& sys, json report_extra) {
  const VerifyReport rep = verify(g, p, sys);  // own check, independent of the router's
  run.outcome["verified"] = rep.ok;
  run.outcome["routes"] = sys.routes.size();
  run.outcome["edges_used"] = rep.edges_used;
  if (!a.report.empty()) {
    report_extra["verify"] = io::to_json(rep);
    run.emit("report", text_of(report_extra), a.report);
  }
  if (!rep.ok) {
    run.log.error("verify_failed", {{"failures", rep.failures.size()}});
    return kExitFailed;
  }
  const auto enc = a.encoding == "delta" ? io::RouteEncoding::kDelta : io::RouteEncoding::kPlain;
  run.emit("paths", text_of(io::to_json(sys, enc)), a.out);
  return kExitOk;
}

int cmd_route(Run& run, const RouteArgs& a) {
  TraceSink trace(a.trace, run.err);
  const auto t0 = Clock::now();
  OracleConfig cfg;
  cfg.node_budget = node_budget(a.budget);
  run.outcome["method"] = a.method;

  auto pairing_for = [&](std::size_t n, std::size_t default_count) {
    if (!a.pairs.empty()) return load_pairing(run, a.pairs, n);
    run.seed = a.seed;
    const std::size_t count = a.count.value_or(default_count);
    Pairing p = 2 * count == n ? random_full_pairing(n, a.seed) : random_pairing(n, count, a.seed);
    if (!a.pairs_out.empty()) run.emit("pairs", text_of(io::to_json(p.pairs())), a.pairs_out);
    return p;
  };

  if (a.method == "kmm") {
    if (!a.m) throw UsageError("kmm needs --m");
    const Graph g = kmm_product(*a.m);
    const Pairing p = pairing_for(g.num_vertices(), g.num_vertices() / 2);
    run.log.info("route_start", {{"method", "kmm"}, {"m", *a.m}, {"pairs", p.size()}});
    const KmmOutcome res = route_full(g, *a.m, p, {!a.explore});
    for (const auto& [phase, detail] : res.metrics.items()) {
      if (detail.is_object()) trace.line({{"phase", phase}, {"detail", detail}});
    }
    run.log.info("route_done", {{"ok", res.ok}, {"seconds", seconds_since(t0)}});
    if (!res.ok) {
      run.outcome["verified"] = false;
      run.outcome["failed_phase"] = res.failed_phase;
      run.outcome["message"] = res.message;
      if (res.error) run.outcome["error"] = to_string(*res.error);
      if (!a.report.empty()) run.emit("report", text_of({{"metrics", res.metrics}}), a.report);
      run.log.error("route_failed", {{"phase", res.failed_phase}, {"message", res.message}});
      return kExitFailed;
    }
    run.outcome["edges_total"] = res.metrics.value("edges_total", json(nullptr));
    return finish_route(run, a, g, p, res.system, {{"metrics", res.metrics}});
  }

  RouteOptions opts;
  opts.strict = !a.unchecked;
  RouteResult res;
  Graph host;
  Pairing p;
  if (a.method == "sweep") {
    if (!a.k || !a.m) throw UsageError("sweep needs --k and --m");
    const BlownUpPath b = blown_up_path(*a.k, *a.m);
    host = b.graph;
    p = pairing_for(host.num_vertices(), std::min(*a.m * *a.m, host.num_vertices() / 2));
    run.log.info("route_start", {{"method", "sweep"}, {"k", *a.k}, {"m", *a.m}, {"pairs", p.size()}});
    res = route_blownup_sweep(b, p, opts);
  } else {
    if (a.graph_g.empty() || a.graph_h.empty()) throw UsageError(a.method + " needs --graph-g and --graph-h");
    const Graph g = load_graph(run, "graph-g", a.graph_g);
    const Graph h = load_graph(run, "graph-h", a.graph_h);
    const auto sg = make_solver(a.solver_g, g, a.a, "a", cfg);
    const auto sh = make_solver(a.solver_h, h, a.b, "b", cfg);
    host = cartesian_product(g, h);
    const std::size_t ca = sg->capability();
    const std::size_t cb = sh->capability();
    std::size_t s = ca + cb;
    if (a.method == "thm2") {
      s = 1;
      while (2 * (s + 1) < (ca + 1) * (cb + 1)) ++s;
    }
    p = pairing_for(host.num_vertices(), s);
    run.log.info("route_start", {{"method", a.method}, {"a", ca}, {"b", cb}, {"pairs", p.size()}});
    res = a.method == "thm1" ? route_theorem1(g, h, *sg, *sh, p, opts)
                             : route_theorem2(g, h, *sg, *sh, p, opts);
  }
  for (const auto& ph : res.plan.phases) trace.line({{"phase", ph.phase}, {"detail", ph.detail}});
  run.log.info("route_done", {{"ok", true}, {"seconds", seconds_since(t0)}});
  return finish_route(run, a, host, p, res.system, {{"plan", to_json(res.plan)}});
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string graph, pairs, paths, out;
};

int cmd_verify(Run& run, const VerifyArgs& a) {
  const Graph g = load_graph(run, "graph", a.graph);
  const json pj = io::parse(run.read_input("pairs", a.pairs), a.pairs);
  const auto pairs = io::pairs_from_json(pj);  // invariants are reported, not thrown
  const json sj = io::parse(run.read_input("paths", a.paths), a.paths);
  const VerifyReport rep = verify(g, pairs, io::path_system_from_json(sj));
  run.outcome = {{"ok", rep.ok}, {"failures", rep.failures.size()}};
  run.emit("report", text_of(io::to_json(rep)), a.out);
  return rep.ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
  std::string graph, pairs, order = "shortest_first", out;
  std::optional<std::size_t> k, pp, max_length;
  std::optional<std::uint64_t> budget;
};

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return kExitOk;
    case Verdict::kInfeasible: return kExitFailed;
    case Verdict::kBudgetExceeded: return kExitBudget;
  }
  return kExitFailed;
}

int cmd_oracle(Run& run, const OracleArgs& a) {
  const Graph g = load_graph(run, "graph", a.graph);
  OracleConfig cfg;
  cfg.node_budget = node_budget(a.budget);
  cfg.max_total_path_length = a.max_length;
  cfg.pair_order = a.order == "given" ? PairOrder::kGiven : PairOrder::kShortestFirst;
  const int modes = !a.pairs.empty() + a.k.has_value() + a.pp.has_value();
  if (modes != 1) throw UsageError("give exactly one of --pairs, --k and --pp");
  const auto t0 = Clock::now();
  json result;
  int code = kExitOk;
  if (!a.pairs.empty()) {
    const Pairing p = load_pairing(run, a.pairs, g.num_vertices());
    const SolveResult r = solve_exact(g, p, cfg);
    result = {{"mode", "pairs"}, {"verdict", to_string(r.verdict)}, {"nodes", r.nodes},
              {"final_bound", r.final_bound}};
    if (r.system) {
      result["routes"] = io::to_json(*r.system)["routes"];
      result["verified"] = verify(g, p, *r.system).ok;
    }
    if (r.verdict == Verdict::kInfeasible) {
      result["certificate"] = {{"exhaustive", true}, {"pairs", io::to_json(p.pairs())["pairs"]}};
    }
    code = verdict_exit(r.verdict);
  } else if (a.k) {
    const PairabilityResult r = is_k_path_pairable(g, *a.k, cfg);
    result = {{"mode", "k"},
              {"k", *a.k},
              {"verdict", to_string(r.verdict)},
              {"pairable", r.verdict == Verdict::kFeasible},
              {"placements_checked", r.placements_checked},
              {"placements_unknown", r.placements_unknown},
              {"nodes", r.nodes}};
    if (r.counter) result["counter"] = io::to_json(r.counter->pairs())["pairs"];
    code = verdict_exit(r.verdict);
  } else {
    const PpResult r = pp_number(g, *a.pp, cfg);
    json levels = json::array();
    for (const auto& l : r.levels) {
      json lv = {{"k", l.k}, {"verdict", to_string(l.result.verdict)},
                 {"placements_checked", l.result.placements_checked}};
      if (l.result.counter) lv["counter"] = io::to_json(l.result.counter->pairs())["pairs"];
      levels.push_back(std::move(lv));
    }
    result = {{"mode", "pp"}, {"pp", r.pp}, {"complete", r.complete}, {"levels", levels}};
    code = r.complete ? kExitOk : kExitBudget;
  }
  run.log.info("oracle_done", {{"seconds", seconds_since(t0)}});
  run.outcome = {{"verdict", result.contains("verdict") ? result["verdict"] : json(nullptr)}};
  if (result.contains("pp")) run.outcome["pp"] = result["pp"];
  run.emit("result", text_of(result), a.out);
  return code;
}

// ---------------------------------------------------------------------------

struct CutArgs {
  std::string graph, out;
  std::optional<std::size_t> k;
  bool full = false;
  std::uint64_t cap = kDefaultEnumerationCap;
};

int cmd_cut(Run& run, const CutArgs& a) {
  const Graph g = load_graph(run, "graph", a.graph);
  if (a.full == a.k.has_value()) throw UsageError("give exactly one of --k and --full");
  const CutCheck c = a.full ? check_full_cut(g, a.cap) : check_k_cut(g, *a.k, a.cap);
  json result = {{"ok", c.ok}, {"subsets_examined", c.subsets_examined}};
  if (c.witness) {
    result["witness"] = c.witness->subset;
    result["boundary"] = c.witness->boundary;
    result["size"] = c.witness->size;
    result["pp_upper_bound"] = c.witness->size - 1;
  } else {
    result["witness"] = nullptr;
  }
  run.outcome = {{"ok", c.ok}};
  run.emit("result", text_of(result), a.out);
  return c.ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string suite = "kmm";
  std::size_t m = 104;
  std::size_t seeds = 1;
  bool explore = false;
  std::string out;
};

int cmd_bench(Run& run, const BenchArgs& a) {
  json rows = json::array();
  bool all_ok = true;
  if (a.suite == "kmm") {
    auto t0 = Clock::now();
    const Graph g = kmm_product(a.m);
    run.log.info("bench_graph", {{"m", a.m}, {"edges", g.num_edges()}, {"seconds", seconds_since(t0)}});
    for (std::uint64_t s = 0; s < a.seeds; ++s) {
      const Pairing p = random_full_pairing(g.num_vertices(), s);
      t0 = Clock::now();
      const KmmOutcome res = route_full(g, a.m, p, {!a.explore});
      const double secs = seconds_since(t0);
      all_ok = all_ok && res.ok;
      rows.push_back({{"seed", s}, {"ok", res.ok}, {"seconds", secs}, {"failed_phase", res.failed_phase}});
      run.log.info("bench_instance", rows.back());
    }
  } else {
    const Graph c9 = cycle(9);
    const Graph k16 = complete(16);
    const OracleLayerSolver o1(1);
    const CompleteLayerSolver c2(2);
    struct Case {
      const char* name;
      std::function<bool(std::uint64_t)> run;
    };
    const BlownUpPath b = blown_up_path(8, 4);
    const std::vector<Case> cases = {
        {"thm1_c9_c9", [&](std::uint64_t s) {
           return route_theorem1(c9, c9, o1, o1, random_pairing(81, 2, s)).report.ok;
         }},
        {"thm2_k16_k16", [&](std::uint64_t s) {
           return route_theorem2(k16, k16, c2, c2, random_pairing(256, 4, s)).report.ok;
         }},
        {"sweep_8_4", [&](std::uint64_t s) {
           return route_blownup_sweep(b, random_full_pairing(32, s)).report.ok;
         }},
    };
    for (const auto& c : cases) {
      const auto t0 = Clock::now();
      std::size_t ok = 0;
      for (std::uint64_t s = 0; s < a.seeds; ++s) ok += c.run(s) ? 1 : 0;
      all_ok = all_ok && ok == a.seeds;
      rows.push_back({{"case", c.name}, {"instances", a.seeds}, {"ok", ok}, {"seconds", seconds_since(t0)}});
      run.log.info("bench_case", rows.back());
    }
  }
  run.outcome = {{"all_ok", all_ok}};
  run.emit("bench", text_of({{"suite", a.suite}, {"results", rows}}), a.out);
  return all_ok ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge-disjoint path routing in Cartesian product graphs", "pathpair"};
  app.set_version_flag("--version", PATHPAIR_VERSION);
  app.require_subcommand(1);
  bool quiet = false;
  std::string manifest;
  app.add_flag("-q,--quiet", quiet, "Only log errors");

  auto add_manifest = [&](CLI::App* sub) {
    sub->add_option("--manifest", manifest, "Write the run manifest (JSON) to this file");
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph family or adversarial instance");
  gen_cmd->add_option("family", gen.family)
      ->required()
      ->check(CLI::IsMember({"complete", "complete_bipartite", "path", "cycle", "star", "hypercube",
                             "blownup", "kmm", "starblock", "cutexample", "grid"}));
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--a", gen.a);
  gen_cmd->add_option("--b", gen.b);
  gen_cmd->add_option("--k", gen.k);
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--d", gen.d);
  gen_cmd->add_option("--N", gen.N, "Clique size of the clique_tail cut example");
  gen_cmd->add_option("--variant", gen.variant)->check(CLI::IsMember({"matched", "tail"}));
  gen_cmd->add_option("--format", gen.format)->check(CLI::IsMember({"json", "dot", "edges"}));
  gen_cmd->add_option("--out", gen.out);
  gen_cmd->add_option("--pairs-out", gen.pairs_out, "Side file for the adversarial pairing");
  add_manifest(gen_cmd);

  ProductArgs prod;
  auto* prod_cmd = app.add_subcommand("product", "Cartesian product of two graphs");
  prod_cmd->add_option("--graph-g", prod.g)->required();
  prod_cmd->add_option("--graph-h", prod.h)->required();
  prod_cmd->add_option("--out", prod.out);
  add_manifest(prod_cmd);

  PairsArgs pairs;
  auto* pairs_cmd = app.add_subcommand("pairs", "Seeded random pairing");
  pairs_cmd->add_option("--graph", pairs.graph)->required();
  pairs_cmd->add_flag("--full", pairs.full, "Pair every vertex");
  pairs_cmd->add_option("--k", pairs.k, "Number of pairs");
  pairs_cmd->add_option("--seed", pairs.seed);
  pairs_cmd->add_option("--out", pairs.out);
  add_manifest(pairs_cmd);

  RouteArgs route;
  auto* route_cmd = app.add_subcommand("route", "Route a pairing and verify the result");
  route_cmd->add_option("--method", route.method)
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "sweep", "kmm"}));
  route_cmd->add_option("--graph-g", route.graph_g);
  route_cmd->add_option("--graph-h", route.graph_h);
  route_cmd->add_option("--solver-g", route.solver_g)->check(CLI::IsMember({"oracle", "complete", "sweep"}));
  route_cmd->add_option("--solver-h", route.solver_h)->check(CLI::IsMember({"oracle", "complete", "sweep"}));
  route_cmd->add_option("--a", route.a, "Capability of the G solver");
  route_cmd->add_option("--b", route.b, "Capability of the H solver");
  route_cmd->add_option("--k", route.k);
  route_cmd->add_option("--m", route.m);
  route_cmd->add_option("--pairs", route.pairs, "Pairing file; otherwise a seeded random pairing");
  route_cmd->add_option("--count", route.count, "Size of the random pairing");
  route_cmd->add_option("--seed", route.seed);
  route_cmd->add_option("--pairs-out", route.pairs_out, "Write the generated pairing here");
  route_cmd->add_flag("--unchecked", route.unchecked, "Skip theorem preconditions (thm1, thm2, sweep)");
  auto* strict_flag = route_cmd->add_flag("--strict", "Theorem thresholds enforced (kmm, default)");
  route_cmd->add_flag("--explore", route.explore, "Any even m >= 6 (kmm)")->excludes(strict_flag);
  route_cmd->add_option("--encoding", route.encoding)->check(CLI::IsMember({"plain", "delta"}));
  route_cmd->add_option("--out", route.out, "Path system; a .gz suffix compresses");
  route_cmd->add_option("--trace", route.trace, "Phase trace as JSON lines ('-' for stderr)");
  route_cmd->add_option("--report", route.report, "Phase metrics and verify report");
  route_cmd->add_option("--budget", route.budget, "Oracle node budget for oracle layer solvers");
  add_manifest(route_cmd);

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Check a path system against a graph and pairing");
  verify_cmd->add_option("--graph", ver.graph)->required();
  verify_cmd->add_option("--pairs", ver.pairs)->required();
  verify_cmd->add_option("--paths", ver.paths)->required();
  verify_cmd->add_option("--out", ver.out);
  add_manifest(verify_cmd);

  OracleArgs orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact routing and path-pairability");
  oracle_cmd->add_option("--graph", orc.graph)->required();
  oracle_cmd->add_option("--pairs", orc.pairs, "Decide one pairing");
  oracle_cmd->add_option("--k", orc.k, "Decide k-path-pairability");
  oracle_cmd->add_option("--pp", orc.pp, "Scan k = 1..KMAX for pp(G)");
  oracle_cmd->add_option("--budget", orc.budget, "Search node budget (else PATHPAIR_BUDGET)");
  oracle_cmd->add_option("--max-length", orc.max_length, "Cap on the summed route length");
  oracle_cmd->add_option("--order", orc.order)->check(CLI::IsMember({"given", "shortest_first"}));
  oracle_cmd->add_option("--out", orc.out);
  add_manifest(oracle_cmd);

  CutArgs cut;
  auto* cut_cmd = app.add_subcommand("cut", "Exhaustive cut-condition check");
  cut_cmd->add_option("--graph", cut.graph)->required();
  cut_cmd->add_option("--k", cut.k);
  cut_cmd->add_flag("--full", cut.full, "All S with |S| <= n/2");
  cut_cmd->add_option("--cap", cut.cap, "Enumeration cap");
  cut_cmd->add_option("--out", cut.out);
  add_manifest(cut_cmd);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Timed routing runs");
  bench_cmd->add_option("suite", bench.suite)->check(CLI::IsMember({"kmm", "desk"}));
  bench_cmd->add_option("--m", bench.m);
  bench_cmd->add_option("--seeds", bench.seeds);
  bench_cmd->add_flag("--explore", bench.explore);
  bench_cmd->add_option("--out", bench.out);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Run run{out, err, Log(err, quiet), sub->get_name(), json::object(), json::object(),
          json::object(), json::object(), std::nullopt};
  record_params(*sub, run.params);
  int code = kExitFailed;
  try {
    if (sub == gen_cmd) code = cmd_gen(run, gen);
    else if (sub == prod_cmd) code = cmd_product(run, prod);
    else if (sub == pairs_cmd) code = cmd_pairs(run, pairs);
    else if (sub == route_cmd) code = cmd_route(run, route);
    else if (sub == verify_cmd) code = cmd_verify(run, ver);
    else if (sub == oracle_cmd) code = cmd_oracle(run, orc);
    else if (sub == cut_cmd) code = cmd_cut(run, cut);
    else code = cmd_bench(run, bench);
  } catch (const UsageError& e) {
    run.log.error("usage", {{"message", e.what()}});
    run.outcome["error"] = "usage";
    code = kExitUsage;
  } catch (const Error& e) {
    run.log.error("error", {{"code", to_string(e.code())}, {"message", e.what()}});
    run.outcome["error"] = to_string(e.code());
    run.outcome["message"] = e.what();
    code = exit_for(e.code());
  }
  if (!manifest.empty()) {
    try {
      io::write_file(manifest, run.manifest(code).dump(2) + "\n");
    } catch (const Error& e) {
      run.log.error("manifest", {{"message", e.what()}});
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace pathpair::cli
