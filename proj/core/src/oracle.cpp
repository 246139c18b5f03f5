#include "pathpair/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "pathpair/error.hpp"

namespace pathpair {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return "feasible";
    case Verdict::kInfeasible: return "infeasible";
    case Verdict::kBudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

namespace {

constexpr std::uint32_t kFar = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kNoBound = std::numeric_limits<std::size_t>::max();

struct OutOfBudget {};

class ExactSearch {
 public:
  ExactSearch(const Graph& g, std::span<const TerminalPair> pairs, const OracleConfig& cfg)
      : g_(g),
        pairs_(pairs),
        cfg_(cfg),
        used_(g.num_edges(), 0),
        rdeg_(g.num_vertices()),
        owner_(g.num_vertices(), -1),
        on_path_(g.num_vertices(), 0),
        routed_(pairs.size(), 0),
        routes_(pairs.size()),
        dist_(pairs.size() + 1, std::vector<std::uint32_t>(g.num_vertices())),
        level_dist_(pairs.size()) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) rdeg_[v] = static_cast<std::uint32_t>(g.degree(v));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      owner_[pairs[i].first] = static_cast<int>(i);
      owner_[pairs[i].second] = static_cast<int>(i);
    }
  }

  SolveResult run() {
    SolveResult out;
    if (pairs_.empty()) {
      out.verdict = Verdict::kFeasible;
      out.system = PathSystem{};
      return out;
    }
    const std::size_t cap = cfg_.max_total_path_length.value_or(g_.num_edges());
    std::size_t bound = 0;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      bfs_from(pairs_[i].second, i, dist_[0]);
      const std::uint32_t d = dist_[0][pairs_[i].first];
      if (d == kFar) {
        out.verdict = Verdict::kInfeasible;
        return out;
      }
      bound += d;
    }
    try {
      while (true) {
        if (bound > cap) {
          out.verdict = bound > g_.num_edges() ? Verdict::kInfeasible : Verdict::kBudgetExceeded;
          break;
        }
        bound_ = bound;
        next_bound_ = kNoBound;
        out.final_bound = bound;
        if (level(0, 0)) {
          out.verdict = Verdict::kFeasible;
          PathSystem sys;
          for (auto& r : routes_) sys.routes.push_back(Path{r});
          out.system = std::move(sys);
          break;
        }
        if (next_bound_ == kNoBound) {
          out.verdict = Verdict::kInfeasible;
          break;
        }
        bound = next_bound_;
      }
    } catch (const OutOfBudget&) {
      out.verdict = Verdict::kBudgetExceeded;
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  // w may not be used as an inner vertex of pair p's route if it is the
  // terminal of another unrouted pair that would be left without a free edge.
  bool blocked(Vertex w, std::size_t p) const {
    const int q = owner_[w];
    return q >= 0 && static_cast<std::size_t>(q) != p && !routed_[q] && rdeg_[w] < 3;
  }

  // Residual distances to `target` for pair p.
  void bfs_from(Vertex target, std::size_t p, std::vector<std::uint32_t>& dist) {
    std::fill(dist.begin(), dist.end(), kFar);
    queue_.clear();
    dist[target] = 0;
    queue_.push_back(target);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Vertex v = queue_[head];
      if (v != target && blocked(v, p)) continue;  // reachable, but not a through vertex
      const auto nbrs = g_.neighbors(v);
      const auto ids = g_.incident_edges(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (used_[ids[i]] || dist[nbrs[i]] != kFar) continue;
        dist[nbrs[i]] = dist[v] + 1;
        queue_.push_back(nbrs[i]);
      }
    }
  }

  // Routes are simple, but different routes may share vertices.
  static int mark(std::size_t p) { return static_cast<int>(p) + 1; }

  void note_cutoff(std::size_t f) {
    if (f <= g_.num_edges()) next_bound_ = std::min(next_bound_, f);
  }

  bool level(std::size_t depth, std::size_t total) {
    if (depth == pairs_.size()) return true;
    // lower bound for every unrouted pair, pick the next one
    std::size_t lb = 0;
    std::size_t pick = pairs_.size();
    std::uint32_t pick_d = kFar;
    auto& scratch = dist_[depth + 1];
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (routed_[i]) continue;
      bfs_from(pairs_[i].second, i, scratch);
      const std::uint32_t d = scratch[pairs_[i].first];
      if (d == kFar) return false;
      lb += d;
      const bool better = cfg_.pair_order == PairOrder::kShortestFirst ? d < pick_d
                                                                        : pick == pairs_.size();
      if (better) {
        pick = i;
        pick_d = d;
      }
    }
    if (total + lb > bound_) {
      note_cutoff(total + lb);
      return false;
    }
    auto& dist = level_dist_[depth];
    dist.resize(g_.num_vertices());
    bfs_from(pairs_[pick].second, pick, dist);
    const std::size_t rest = lb - pick_d;

    routed_[pick] = 1;  // its own terminals no longer block anything
    auto& route = routes_[pick];
    route.assign(1, pairs_[pick].first);
    const Vertex start = pairs_[pick].first;
    const int saved = on_path_[start];
    on_path_[start] = mark(pick);
    const bool ok = extend(pick, depth, total, rest, dist);
    on_path_[start] = saved;
    if (!ok) {
      routed_[pick] = 0;
      route.clear();
    }
    return ok;
  }

  bool extend(std::size_t p, std::size_t depth, std::size_t total, std::size_t rest,
              const std::vector<std::uint32_t>& dist) {
    auto& route = routes_[p];
    const Vertex v = route.back();
    const Vertex target = pairs_[p].second;
    const std::size_t len = route.size() - 1;
    const auto nbrs = g_.neighbors(v);
    const auto ids = g_.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const Vertex w = nbrs[i];
      const EdgeId e = ids[i];
      if (used_[e] || on_path_[w] == mark(p) || dist[w] == kFar) continue;
      if (w != target && blocked(w, p)) continue;
      const std::size_t f = total + len + 1 + dist[w] + rest;
      if (f > bound_) {
        note_cutoff(f);
        continue;
      }
      if (++nodes_ > cfg_.node_budget) throw OutOfBudget{};
      used_[e] = 1;
      --rdeg_[v];
      --rdeg_[w];
      route.push_back(w);
      bool ok;
      if (w == target) {
        ok = level(depth + 1, total + len + 1);
      } else {
        const int saved = on_path_[w];
        on_path_[w] = mark(p);
        ok = extend(p, depth, total, rest, dist);
        on_path_[w] = saved;
      }
      if (ok) return true;
      route.pop_back();
      ++rdeg_[v];
      ++rdeg_[w];
      used_[e] = 0;
    }
    return false;
  }

  const Graph& g_;
  std::span<const TerminalPair> pairs_;
  const OracleConfig& cfg_;
  std::vector<char> used_;
  std::vector<std::uint32_t> rdeg_;
  std::vector<int> owner_;
  std::vector<int> on_path_;  // pair index + 1 of the route being built through v
  std::vector<char> routed_;
  std::vector<std::vector<Vertex>> routes_;
  std::vector<std::vector<std::uint32_t>> dist_;        // scratch per depth
  std::vector<std::vector<std::uint32_t>> level_dist_;  // chosen pair's distances per depth
  std::vector<Vertex> queue_;
  std::size_t bound_ = 0;
  std::size_t next_bound_ = kNoBound;
  std::uint64_t nodes_ = 0;
};

// Calls visit(pairs) for every canonical perfect matching of `verts` (sorted).
// Stops early when visit returns false.
template <typename Visit>
bool for_each_matching(std::vector<Vertex>& verts, std::vector<char>& taken,
                       std::vector<TerminalPair>& acc, Visit& visit) {
  std::size_t first = 0;
  while (first < verts.size() && taken[first]) ++first;
  if (first == verts.size()) return visit(acc);
  taken[first] = 1;
  for (std::size_t j = first + 1; j < verts.size(); ++j) {
    if (taken[j]) continue;
    taken[j] = 1;
    acc.push_back({verts[first], verts[j]});
    const bool go_on = for_each_matching(verts, taken, acc, visit);
    acc.pop_back();
    taken[j] = 0;
    if (!go_on) {
      taken[first] = 0;
      return false;
    }
  }
  taken[first] = 0;
  return true;
}

}  // namespace

SolveResult solve_exact(const Graph& g, const Pairing& pairing, const OracleConfig& cfg) {
  for (const auto& p : pairing.pairs()) {
    if (p.first >= g.num_vertices() || p.second >= g.num_vertices()) {
      throw Error(ErrorCode::kInvalidPairing, "terminal outside the graph (n=" +
                                                  std::to_string(g.num_vertices()) + ")");
    }
  }
  if (cfg.node_budget == 0) throw Error(ErrorCode::kInvalidArgument, "node budget must be positive");
  return ExactSearch(g, pairing.pairs(), cfg).run();
}

PairabilityResult is_k_path_pairable(const Graph& g, std::size_t k, const OracleConfig& cfg) {
  const std::size_t n = g.num_vertices();
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (2 * k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k=" + std::to_string(k) + " needs 2k <= n=" + std::to_string(n));
  }
  PairabilityResult out;
  const std::size_t size = 2 * k;
  std::vector<Vertex> combo(size);
  for (std::size_t i = 0; i < size; ++i) combo[i] = static_cast<Vertex>(i);
  std::vector<char> taken(size, 0);
  std::vector<TerminalPair> acc;

  // the node budget covers the whole scan, not each placement
  auto visit = [&](const std::vector<TerminalPair>& pairs) {
    ++out.placements_checked;
    Pairing placement(pairs);
    if (out.nodes >= cfg.node_budget) {
      ++out.placements_unknown;
      out.verdict = Verdict::kBudgetExceeded;
      return false;
    }
    OracleConfig local = cfg;
    local.node_budget = cfg.node_budget - out.nodes;
    const SolveResult r = solve_exact(g, placement, local);
    out.nodes += r.nodes;
    if (r.verdict == Verdict::kInfeasible) {
      out.verdict = Verdict::kInfeasible;
      out.counter = std::move(placement);
      return false;
    }
    if (r.verdict == Verdict::kBudgetExceeded) {
      ++out.placements_unknown;
      out.verdict = Verdict::kBudgetExceeded;
      return false;
    }
    return true;
  };

  while (true) {
    if (!for_each_matching(combo, taken, acc, visit)) return out;  // refuted or out of budget
    std::size_t i = size;
    while (i > 0 && combo[i - 1] == n - size + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
  }
  return out;
}

PpResult pp_number(const Graph& g, std::size_t k_max, const OracleConfig& cfg) {
  if (2 * k_max > g.num_vertices()) {
    throw Error(ErrorCode::kInvalidArgument, "k_max exceeds half the vertex count");
  }
  PpResult out;
  bool seen_false = false;
  for (std::size_t k = 1; k <= k_max; ++k) {
    PpLevel lvl{k, is_k_path_pairable(g, k, cfg)};
    const Verdict v = lvl.result.verdict;
    out.levels.push_back(std::move(lvl));
    if (v == Verdict::kBudgetExceeded) {
      out.complete = false;
      break;
    }
    if (v == Verdict::kInfeasible) {
      seen_false = true;
    } else if (seen_false) {
      throw Error(ErrorCode::kInternal,
                  "pp scan not monotone: k=" + std::to_string(k) + " pairable after a failure");
    } else {
      out.pp = k;
    }
  }
  return out;
}

}  // namespace pathpair
