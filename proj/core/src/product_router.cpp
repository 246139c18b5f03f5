#include "pathpair/product_router.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "pathpair/error.hpp"
#include "sweep.hpp"

namespace pathpair {

namespace {

using nlohmann::json;

// A terminal (or the stand-in that currently represents it). `head` runs
// from the original terminal to the stand-in along horizontal edges.
struct Token {
  Vertex g = 0;
  Vertex h = 0;
  std::vector<Vertex> head;
};

enum class Theorem { kOne, kTwo };

class ProductRouter {
 public:
  ProductRouter(const Graph& g, const Graph& h, const LayerSolver& sg, const LayerSolver& sh,
                std::span<const TerminalPair> pairs, Theorem thm, const RouteOptions& opts)
      : g_(g),
        h_(h),
        sg_(sg),
        sh_(sh),
        product_(cartesian_product(g, h)),
        ledger_(product_),
        pairs_(pairs),
        thm_(thm),
        a_(sg.capability()),
        b_(sh.capability()),
        strict_(opts.strict),
        done_(pairs.size(), 0),
        routes_(pairs.size()) {
    tokens_.reserve(2 * pairs.size());
    for (const auto& p : pairs) {
      for (Vertex v : {p.first, p.second}) {
        const auto c = product_coords(v, h.num_vertices());
        tokens_.push_back({c.g, c.h, {v}});
      }
    }
  }

  std::vector<Path> run(std::vector<PhaseRecord>& phases) {
    phases_ = &phases;
    redistribute();
    base_case();
    return std::move(routes_);
  }

 private:
  Vertex at(Vertex g, Vertex h) const { return static_cast<Vertex>(g * h_.num_vertices() + h); }
  Vertex pos(const Token& t) const { return at(t.g, t.h); }
  std::size_t pair_of(std::size_t tok) const { return tok / 2; }

  void record(std::string phase, json detail) { phases_->push_back({std::move(phase), std::move(detail)}); }

  void internal_check(bool ok, const std::string& what) const {
    if (strict_ && !ok) throw Error(ErrorCode::kInternal, what);
  }

  // --- bookkeeping over the active tokens ---------------------------------

  std::map<Vertex, std::set<std::size_t>> types_by_layer() const {
    std::map<Vertex, std::set<std::size_t>> out;
    for (std::size_t t = 0; t < tokens_.size(); ++t)
      if (!done_[pair_of(t)]) out[tokens_[t].h].insert(pair_of(t));
    return out;
  }

  std::vector<Vertex> overloaded() const {
    std::vector<Vertex> out;
    for (const auto& [h, types] : types_by_layer())
      if (types.size() > a_) out.push_back(h);
    return out;
  }

  std::size_t tokens_in_layer(Vertex h) const {
    std::size_t n = 0;
    for (std::size_t t = 0; t < tokens_.size(); ++t)
      if (!done_[pair_of(t)] && tokens_[t].h == h) ++n;
    return n;
  }

  std::set<Vertex> occupied() const {
    std::set<Vertex> out;
    for (std::size_t t = 0; t < tokens_.size(); ++t)
      if (!done_[pair_of(t)]) out.insert(pos(tokens_[t]));
    return out;
  }

  // --- layer solving ------------------------------------------------------

  // Solves `pairs` (factor vertex ids) inside one layer, claims the routes and
  // returns them in product vertex ids.
  std::vector<Path> solve_layer(LayerKind kind, Vertex anchor, std::span<const TerminalPair> pairs,
                                const char* phase) {
    const bool is_g = kind == LayerKind::kG;
    const Graph& factor = is_g ? g_ : h_;
    const LayerSolver& solver = is_g ? sg_ : sh_;
    auto embed = [&](Vertex v) { return is_g ? at(v, anchor) : at(anchor, v); };
    const std::string where = std::string(phase) + ": " + (is_g ? "G" : "H") + "-layer " +
                              std::to_string(anchor);
    internal_check(pairs.size() <= solver.capability(),
                   where + " received " + std::to_string(pairs.size()) + " pairs, capability " +
                       std::to_string(solver.capability()));

    std::vector<char> usable(factor.num_edges());
    for (EdgeId e = 0; e < factor.num_edges(); ++e) {
      const Edge& ed = factor.edge(e);
      usable[e] = !ledger_.is_used(embed(ed.u), embed(ed.v));
    }
    auto found = solver.solve(factor, usable, pairs);
    if (!found || found->size() != pairs.size()) {
      throw Error(ErrorCode::kLayerSolverFailed,
                  where + ": solver '" + solver.name() + "' failed on " +
                      std::to_string(pairs.size()) + " pairs (capability " +
                      std::to_string(solver.capability()) + ")");
    }
    std::vector<Path> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Path& p = (*found)[i];
      if (p.vertices.empty() || p.front() != pairs[i].first || p.back() != pairs[i].second) {
        throw Error(ErrorCode::kLayerSolverFailed, where + ": solver returned a wrong endpoint");
      }
      Path mapped;
      mapped.vertices.reserve(p.vertices.size());
      for (Vertex v : p.vertices) mapped.vertices.push_back(embed(v));
      if (auto clash = ledger_.claim(mapped)) {
        throw Error(ErrorCode::kEdgeConflict, where + ": edge (" + std::to_string(clash->u) + "," +
                                                  std::to_string(clash->v) + ") claimed twice");
      }
      out.push_back(std::move(mapped));
    }
    return out;
  }

  // Moves tokens inside their own H-layer: token -> new second coordinate.
  void apply_moves(const std::vector<std::pair<std::size_t, Vertex>>& moves, const char* phase) {
    std::map<Vertex, std::vector<std::pair<std::size_t, Vertex>>> by_g;
    for (const auto& mv : moves) by_g[tokens_[mv.first].g].push_back(mv);
    json layers = json::array();
    for (const auto& [g, list] : by_g) {
      std::vector<TerminalPair> lp;
      for (const auto& [tok, nh] : list) lp.push_back({tokens_[tok].h, nh});
      const auto paths = solve_layer(LayerKind::kH, g, lp, phase);
      for (std::size_t i = 0; i < list.size(); ++i) {
        Token& t = tokens_[list[i].first];
        t.head.insert(t.head.end(), paths[i].vertices.begin() + 1, paths[i].vertices.end());
        t.h = list[i].second;
      }
      layers.push_back({{"h_layer", g}, {"moves", list.size()}});
    }
    json moved = json::array();
    for (const auto& [tok, nh] : moves) moved.push_back({{"pair", pair_of(tok)}, {"to", pos(tokens_[tok])}});
    record(phase, {{"moves", moved}, {"h_layers", layers}});
  }

  // --- redistribution -----------------------------------------------------

  void redistribute() {
    const auto over = overloaded();
    if (over.empty()) {
      record("redistribution", {{"case", "none"}});
      return;
    }
    if (thm_ == Theorem::kOne) {
      internal_check(over.size() <= 3, std::to_string(over.size()) + " overloaded G-layers");
      if (over.size() == 1) {
        case_one(over[0]);
      } else if (over.size() == 2 && b_ == 1) {
        case_two_single(over);
      } else {
        move_all(over, over.size() == 2 ? "case2" : "case3");
      }
    } else {
      internal_check(over.size() <= b_, std::to_string(over.size()) +
                                            " overloaded G-layers exceed b=" + std::to_string(b_));
      move_all(over, "general");
    }
    internal_check(overloaded().empty(), "a G-layer is still overloaded after redistribution");
  }

  void case_one(Vertex x) {
    const auto types = types_by_layer();
    const std::size_t count = types.at(x).size();
    const std::size_t t = count - a_;
    std::optional<Vertex> y;
    if (t <= a_) {
      for (Vertex cand = 0; cand < h_.num_vertices(); ++cand) {
        if (cand != x && tokens_in_layer(cand) <= a_ - t) {
          y = cand;
          break;
        }
      }
    }
    if (!y) throw Error(ErrorCode::kPreconditionViolated, "case1: no relief G-layer");

    // candidate types: pairs wholly inside G_x, then singletons
    std::vector<std::pair<Vertex, std::vector<std::size_t>>> whole;
    std::vector<std::pair<Vertex, std::vector<std::size_t>>> single;
    for (std::size_t p : types.at(x)) {
      std::vector<std::size_t> toks;
      for (std::size_t t2 : {2 * p, 2 * p + 1})
        if (tokens_[t2].h == x) toks.push_back(t2);
      Vertex key = pos(tokens_[toks[0]]);
      for (std::size_t t2 : toks) key = std::min(key, pos(tokens_[t2]));
      (toks.size() == 2 ? whole : single).push_back({key, toks});
    }
    std::sort(whole.begin(), whole.end());
    std::sort(single.begin(), single.end());
    whole.insert(whole.end(), single.begin(), single.end());

    const auto busy = occupied();
    std::vector<std::pair<std::size_t, Vertex>> moves;
    std::size_t chosen = 0;
    for (const auto& [key, toks] : whole) {
      if (chosen == t) break;
      const bool fits = std::all_of(toks.begin(), toks.end(), [&](std::size_t tk) {
        return !busy.count(at(tokens_[tk].g, *y));
      });
      if (!fits) continue;
      for (std::size_t tk : toks) moves.push_back({tk, *y});
      ++chosen;
    }
    if (chosen < t) {
      throw Error(ErrorCode::kPreconditionViolated,
                  "case1: only " + std::to_string(chosen) + " of " + std::to_string(t) +
                      " types can move to G-layer " + std::to_string(*y));
    }
    record("redistribution", {{"case", "case1"}, {"overloaded", x}, {"relief", *y}, {"t", t}});
    apply_moves(moves, "case1");
    internal_check(types_by_layer()[*y].size() <= a_, "case1: relief layer exceeds a types");
  }

  void case_two_single(const std::vector<Vertex>& over) {
    std::optional<std::size_t> pick;
    TerminalPair best{};
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const Vertex h1 = tokens_[2 * p].h;
      const Vertex h2 = tokens_[2 * p + 1].h;
      const bool spans = (h1 == over[0] && h2 == over[1]) || (h1 == over[1] && h2 == over[0]);
      if (!spans) continue;
      const TerminalPair key{std::min(pairs_[p].first, pairs_[p].second),
                             std::max(pairs_[p].first, pairs_[p].second)};
      if (!pick || key < best) {
        pick = p;
        best = key;
      }
    }
    if (!pick) {
      move_all(over, "case2");
      return;
    }
    const std::size_t p = *pick;
    Token& t1 = tokens_[2 * p];
    Token& t2 = tokens_[2 * p + 1];
    if (t1.g == t2.g) {
      // both terminals in one H-layer: join them there and drop the pair
      const TerminalPair lp{t1.h, t2.h};
      auto paths = solve_layer(LayerKind::kH, t1.g, {&lp, 1}, "case2");
      routes_[p] = std::move(paths[0]);
      done_[p] = 1;
      record("redistribution", {{"case", "case2"}, {"pair", p}, {"joined_in_h_layer", t1.g}});
      return;
    }
    std::optional<Vertex> y;
    for (Vertex cand = 0; cand < h_.num_vertices(); ++cand) {
      if (tokens_in_layer(cand) == 0) {
        y = cand;
        break;
      }
    }
    if (!y) throw Error(ErrorCode::kPreconditionViolated, "case2: no empty G-layer");
    record("redistribution", {{"case", "case2"}, {"pair", p}, {"relief", *y}});
    apply_moves({{2 * p, *y}, {2 * p + 1, *y}}, "case2");
  }

  // Every token of the overloaded layers moves to an initially empty G-layer,
  // round-robin, at most a per layer, distinct targets.
  void move_all(const std::vector<Vertex>& over, const char* name) {
    std::vector<Vertex> empty;
    for (Vertex h = 0; h < h_.num_vertices(); ++h)
      if (tokens_in_layer(h) == 0) empty.push_back(h);
    std::vector<std::size_t> movers;
    for (std::size_t t = 0; t < tokens_.size(); ++t) {
      if (done_[pair_of(t)]) continue;
      if (std::find(over.begin(), over.end(), tokens_[t].h) != over.end()) movers.push_back(t);
    }
    std::sort(movers.begin(), movers.end(),
              [&](std::size_t l, std::size_t r) { return pos(tokens_[l]) < pos(tokens_[r]); });

    std::map<Vertex, std::size_t> load;
    std::set<Vertex> targets;
    std::vector<std::pair<std::size_t, Vertex>> moves;
    std::size_t rr = 0;
    for (std::size_t tk : movers) {
      bool placed = false;
      for (std::size_t step = 0; step < empty.size() && !placed; ++step) {
        const std::size_t idx = (rr + step) % empty.size();
        const Vertex e = empty[idx];
        const Vertex target = at(tokens_[tk].g, e);
        if (load[e] >= a_ || targets.count(target)) continue;
        ++load[e];
        targets.insert(target);
        moves.push_back({tk, e});
        rr = idx + 1;
        placed = true;
      }
      if (!placed) {
        throw Error(ErrorCode::kPreconditionViolated,
                    std::string(name) + ": not enough empty G-layers for the moved tokens");
      }
    }
    json ov = over;
    record("redistribution", {{"case", name}, {"overloaded", ov}, {"empty_layers", empty.size()}});
    apply_moves(moves, name);
  }

  // --- base case ----------------------------------------------------------

  void base_case() {
    std::set<Vertex> terminal_g;
    for (const auto& t : tokens_) terminal_g.insert(t.g);
    std::vector<Vertex> free_g;
    for (Vertex g = 0; g < g_.num_vertices(); ++g)
      if (!terminal_g.count(g)) free_g.push_back(g);

    // pseudopair layer for every pair split across G-layers
    std::vector<std::optional<Vertex>> layer_of(pairs_.size());
    std::map<Vertex, std::set<Vertex>> used_h;
    std::map<Vertex, std::vector<std::size_t>> bucket;
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (done_[p]) continue;
      const Vertex h1 = tokens_[2 * p].h;
      const Vertex h2 = tokens_[2 * p + 1].h;
      if (h1 == h2) continue;
      for (Vertex g : free_g) {
        auto& hs = used_h[g];
        if (bucket[g].size() >= b_ || hs.count(h1) || hs.count(h2)) continue;
        hs.insert(h1);
        hs.insert(h2);
        bucket[g].push_back(p);
        layer_of[p] = g;
        break;
      }
      if (!layer_of[p]) {
        throw Error(ErrorCode::kPreconditionViolated,
                    "base: no terminal-free H-layer left for pair " + std::to_string(p));
      }
    }

    // G-layer problems
    struct Task {
      std::size_t pair;
      int kind;  // 0 inside pair, 1 first token to stand-in, 2 second token to stand-in
    };
    std::map<Vertex, std::vector<Task>> tasks;
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (done_[p]) continue;
      const Token& t1 = tokens_[2 * p];
      const Token& t2 = tokens_[2 * p + 1];
      if (t1.h == t2.h) {
        tasks[t1.h].push_back({p, 0});
      } else {
        tasks[t1.h].push_back({p, 1});
        tasks[t2.h].push_back({p, 2});
      }
    }
    std::vector<Path> inside(pairs_.size()), down1(pairs_.size()), down2(pairs_.size());
    json glayers = json::array();
    for (const auto& [h, list] : tasks) {
      std::vector<TerminalPair> lp;
      for (const auto& task : list) {
        const Token& t1 = tokens_[2 * task.pair];
        const Token& t2 = tokens_[2 * task.pair + 1];
        if (task.kind == 0) lp.push_back({t1.g, t2.g});
        else lp.push_back({(task.kind == 1 ? t1 : t2).g, *layer_of[task.pair]});
      }
      internal_check(lp.size() <= a_, "base: G-layer " + std::to_string(h) + " carries " +
                                          std::to_string(lp.size()) + " pair types");
      auto paths = solve_layer(LayerKind::kG, h, lp, "base");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& task = list[i];
        (task.kind == 0 ? inside : task.kind == 1 ? down1 : down2)[task.pair] = std::move(paths[i]);
      }
      glayers.push_back({{"g_layer", h}, {"pairs", lp.size()}});
    }

    // H-layer problems for the pseudopairs
    std::vector<Path> across(pairs_.size());
    json hlayers = json::array();
    for (const auto& [g, list] : bucket) {
      if (list.empty()) continue;
      std::vector<TerminalPair> lp;
      for (std::size_t p : list) lp.push_back({tokens_[2 * p].h, tokens_[2 * p + 1].h});
      auto paths = solve_layer(LayerKind::kH, g, lp, "base");
      for (std::size_t i = 0; i < list.size(); ++i) across[list[i]] = std::move(paths[i]);
      hlayers.push_back({{"h_layer", g}, {"pairs", lp.size()}});
    }
    record("base", {{"g_layers", glayers}, {"h_layers", hlayers}});

    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (done_[p]) continue;
      Path route{tokens_[2 * p].head};
      if (layer_of[p]) {
        route = concatenate(std::move(route), down1[p]);
        route = concatenate(std::move(route), across[p]);
        route = concatenate(std::move(route), reversed(down2[p]));
      } else {
        route = concatenate(std::move(route), inside[p]);
      }
      route = concatenate(std::move(route), reversed(Path{tokens_[2 * p + 1].head}));
      routes_[p] = std::move(route);
    }
  }

  const Graph& g_;
  const Graph& h_;
  const LayerSolver& sg_;
  const LayerSolver& sh_;
  Graph product_;
  EdgeLedger ledger_;
  std::span<const TerminalPair> pairs_;
  Theorem thm_;
  std::size_t a_;
  std::size_t b_;
  bool strict_;
  std::vector<Token> tokens_;
  std::vector<char> done_;
  std::vector<Path> routes_;
  std::vector<PhaseRecord>* phases_ = nullptr;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kPreconditionViolated, what);
}

RouteResult finish(const Graph& host, const Pairing& pairing, std::vector<Path> routes,
                   RoutePlan plan) {
  RouteResult out;
  out.system.routes = std::move(routes);
  out.report = verify(host, pairing, out.system);
  if (!out.report.ok) {
    const auto& f = out.report.failures.front();
    throw Error(ErrorCode::kInternal, plan.method + " produced an invalid path system: " +
                                          to_string(f.kind) + " " + f.detail);
  }
  out.plan = std::move(plan);
  return out;
}

RouteResult route_product(const Graph& g, const Graph& h, const LayerSolver& sg,
                          const LayerSolver& sh, const Pairing& pairing, const RouteOptions& opts,
                          Theorem thm) {
  const std::size_t n = g.num_vertices() * h.num_vertices();
  require(n > 0, "empty factor");
  for (const auto& p : pairing.pairs())
    require(p.first < n && p.second < n, "terminal outside G x H");

  const bool swap = sg.capability() < sh.capability();
  const Graph& G = swap ? h : g;
  const Graph& H = swap ? g : h;
  const LayerSolver& SG = swap ? sh : sg;
  const LayerSolver& SH = swap ? sg : sh;
  const std::size_t a = SG.capability();
  const std::size_t b = SH.capability();
  const std::size_t s = pairing.size();

  if (opts.strict) {
    require(a >= 1 && b >= 1, "layer capabilities must be positive");
    if (thm == Theorem::kOne) {
      require(s <= a + b, std::to_string(s) + " pairs exceed a+b=" + std::to_string(a + b));
      require(G.num_vertices() >= 8 * a, "|V(G)| < 8a");
      require(H.num_vertices() >= 8 * b, "|V(H)| < 8b");
    } else {
      require(2 * s < (a + 1) * (b + 1), "s must be below (a+1)(b+1)/2");
      require(G.num_vertices() >= 4 * s && H.num_vertices() >= 4 * s, "factors need >= 4s vertices");
    }
  }

  // In swapped coordinates (g,h) becomes (h,g).
  auto to_inner = [&](Vertex v) {
    if (!swap) return v;
    const auto c = product_coords(v, h.num_vertices());
    return static_cast<Vertex>(c.h * g.num_vertices() + c.g);
  };
  auto to_outer = [&](Vertex v) {
    if (!swap) return v;
    const auto c = product_coords(v, g.num_vertices());
    return static_cast<Vertex>(c.h * h.num_vertices() + c.g);
  };
  std::vector<TerminalPair> inner;
  inner.reserve(s);
  for (const auto& p : pairing.pairs()) inner.push_back({to_inner(p.first), to_inner(p.second)});

  RoutePlan plan;
  plan.method = thm == Theorem::kOne ? "thm1" : "thm2";
  plan.phases.push_back({"setup",
                         {{"a", a}, {"b", b}, {"pairs", s}, {"swapped", swap},
                          {"solver_g", SG.name()}, {"solver_h", SH.name()}, {"strict", opts.strict}}});
  std::vector<Path> routes;
  if (s > 0) {
    ProductRouter router(G, H, SG, SH, inner, thm, opts);
    routes = router.run(plan.phases);
  }
  for (auto& r : routes)
    for (auto& v : r.vertices) v = to_outer(v);
  return finish(cartesian_product(g, h), pairing, std::move(routes), std::move(plan));
}

}  // namespace

RouteResult route_theorem1(const Graph& g, const Graph& h, const LayerSolver& solver_g,
                           const LayerSolver& solver_h, const Pairing& pairing,
                           const RouteOptions& opts) {
  return route_product(g, h, solver_g, solver_h, pairing, opts, Theorem::kOne);
}

RouteResult route_theorem2(const Graph& g, const Graph& h, const LayerSolver& solver_g,
                           const LayerSolver& solver_h, const Pairing& pairing,
                           const RouteOptions& opts) {
  return route_product(g, h, solver_g, solver_h, pairing, opts, Theorem::kTwo);
}

RouteResult route_blownup_sweep(const BlownUpPath& b, const Pairing& pairing,
                                const RouteOptions& opts) {
  if (opts.strict) {
    require(b.k >= 2 * b.m, "sweep needs k >= 2m");
    require(pairing.size() <= b.m * b.m, "sweep handles at most m^2 pairs");
  }
  RoutePlan plan;
  plan.method = "sweep";
  json stats = json::array();
  auto routes = detail::sweep_routes(b.k, b.m, pairing.pairs(), &stats);
  plan.phases.push_back({"setup", {{"k", b.k}, {"m", b.m}, {"pairs", pairing.size()}}});
  plan.phases.push_back({"sweep", {{"classes", stats}}});

  EdgeLedger ledger(b.graph);
  for (const auto& r : routes) {
    if (auto clash = ledger.claim(r)) {
      throw Error(ErrorCode::kEdgeConflict, "sweep: edge (" + std::to_string(clash->u) + "," +
                                                std::to_string(clash->v) + ") claimed twice");
    }
  }
  return finish(b.graph, pairing, std::move(routes), std::move(plan));
}

json to_json(const RoutePlan& plan) {
  json phases = json::array();
  for (const auto& p : plan.phases) phases.push_back({{"phase", p.phase}, {"detail", p.detail}});
  return {{"method", plan.method}, {"phases", phases}};
}

}  // namespace pathpair
