#include "pathpair/bipartite_router.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <string>

#include "pathpair/matching.hpp"

namespace pathpair {

using nlohmann::json;

const char* to_string(ClassId c) {
  switch (c) {
    case ClassId::kA11: return "A11";
    case ClassId::kA12: return "A12";
    case ClassId::kA22: return "A22";
    case ClassId::kA21: return "A21";
  }
  return "?";
}

namespace {

enum class Factor { kFirst, kSecond };

int idx(ClassId c) { return static_cast<int>(c); }
ClassId cls_at(int i) { return static_cast<ClassId>(((i % 4) + 4) % 4); }

// Factor that changes on the clockwise step out of class c.
Factor flips(ClassId c) { return idx(c) % 2 == 0 ? Factor::kSecond : Factor::kFirst; }

bool first_in_a2(ClassId c) { return c == ClassId::kA22 || c == ClassId::kA21; }
bool second_in_a2(ClassId c) { return c == ClassId::kA12 || c == ClassId::kA22; }

ClassId from_sides(bool first_a2, bool second_a2) {
  if (!first_a2) return second_a2 ? ClassId::kA12 : ClassId::kA11;
  return second_a2 ? ClassId::kA22 : ClassId::kA21;
}

// One edge: flip factor f and add delta to its index.
BVertex step(BVertex b, Factor f, std::uint32_t delta, std::size_t m) {
  if (f == Factor::kSecond) {
    b.cls = from_sides(first_in_a2(b.cls), !second_in_a2(b.cls));
    b.v = static_cast<std::uint32_t>((b.v + delta) % m);
  } else {
    b.cls = from_sides(!first_in_a2(b.cls), second_in_a2(b.cls));
    b.u = static_cast<std::uint32_t>((b.u + delta) % m);
  }
  return b;
}

// Vertex of class c on line `line` of factor f, other coordinate `keep`.
BVertex on_line(ClassId c, Factor f, std::uint32_t keep, std::uint32_t line) {
  return f == Factor::kSecond ? BVertex{c, keep, line} : BVertex{c, line, keep};
}

std::uint32_t kept(BVertex b, Factor f) { return f == Factor::kSecond ? b.u : b.v; }

}  // namespace

Vertex KmmLayout::vertex(BVertex b) const {
  const std::size_t x = (first_in_a2(b.cls) ? m_ : 0) + b.u;
  const std::size_t y = (second_in_a2(b.cls) ? m_ : 0) + b.v;
  return static_cast<Vertex>(x * 2 * m_ + y);
}

BVertex KmmLayout::coords(Vertex p) const {
  const std::size_t x = p / (2 * m_);
  const std::size_t y = p % (2 * m_);
  return {from_sides(x >= m_, y >= m_), static_cast<std::uint32_t>(x % m_),
          static_cast<std::uint32_t>(y % m_)};
}

std::vector<Vertex> swarm_path(const KmmLayout& layout, Vertex from, ClassId to) {
  const BVertex b = layout.coords(from);
  const int diff = (idx(to) - idx(b.cls) + 4) % 4;
  const std::size_t m = layout.m();
  switch (diff) {
    case 0: return {from};
    case 1: return {from, layout.vertex(step(b, flips(b.cls), 1, m))};
    case 3: return {from, layout.vertex(step(b, flips(to), 1, m))};
    default: {
      const BVertex mid = step(b, flips(b.cls), 1, m);
      return {from, layout.vertex(mid), layout.vertex(step(mid, flips(mid.cls), 2, m))};
    }
  }
}

KmmRouter::KmmRouter(const Graph& product, std::size_t m, const Pairing& pairing, KmmOptions opts)
    : g_(product),
      layout_(m),
      m_(m),
      pairs_(pairing.pairs().begin(), pairing.pairs().end()),
      opts_(opts),
      ledger_(product),
      host_(pairs_.size(), ClassId::kA11),
      shipped_(pairs_.size(), -1),
      head_(2 * pairs_.size()),
      joined_(pairs_.size(), 0),
      finished_(pairs_.size()),
      column_(pairs_.size(), -1),
      landing_(2 * pairs_.size(), 0),
      hosted_(product.num_vertices(), 0),
      swarm_edges_(product.num_vertices(), 0) {
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    head_[2 * p] = {pairs_[p].first};
    head_[2 * p + 1] = {pairs_[p].second};
  }
  metrics_ = {{"m", m}, {"pairs", pairs_.size()}, {"strict", opts.strict}};
}

void KmmRouter::check(bool ok, ErrorCode code, const std::string& what) const {
  if (!ok) throw Error(code, phase_ + ": " + what);
}

std::vector<std::size_t> KmmRouter::class_loads() const {
  std::vector<std::size_t> loads(4, 0);
  for (ClassId c : host_) ++loads[idx(c)];
  return loads;
}

void KmmRouter::choose_destinations() {
  phase_ = "balance";
  const std::size_t cap = m_ * m_ / 2;
  // arcs[c][d]: pairs hosted in c whose other terminal sits in d
  std::array<std::array<std::set<std::size_t>, 4>, 4> arcs;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const ClassId c1 = layout_.class_of(pairs_[p].first);
    const ClassId c2 = layout_.class_of(pairs_[p].second);
    host_[p] = c2;
    if (c1 != c2) {
      shipped_[p] = 0;
      arcs[idx(c2)][idx(c1)].insert(p);
    }
  }
  std::vector<std::size_t> loads = class_loads();
  const json initial = loads;
  std::size_t augmentations = 0;
  auto excess = [&] {
    std::size_t e = 0;
    for (auto l : loads) e += l > cap ? l - cap : 0;
    return e;
  };
  while (true) {
    const std::size_t before = excess();
    if (before == 0) break;
    // BFS over the 4 classes from the overloaded ones
    std::array<int, 4> parent;
    parent.fill(-2);
    std::deque<int> queue;
    for (int c = 0; c < 4; ++c) {
      if (loads[c] > cap) {
        parent[c] = -1;
        queue.push_back(c);
      }
    }
    int target = -1;
    while (!queue.empty() && target < 0) {
      const int c = queue.front();
      queue.pop_front();
      for (int d = 0; d < 4; ++d) {
        if (parent[d] != -2 || arcs[c][d].empty()) continue;
        parent[d] = c;
        if (loads[d] < cap) {
          target = d;
          break;
        }
        queue.push_back(d);
      }
    }
    if (target < 0) {
      throw Error(ErrorCode::kBalancingFailed,
                  "balance: cannot bring class loads " + json(loads).dump() + " to at most " +
                      std::to_string(cap));
    }
    for (int d = target; parent[d] >= 0; d = parent[d]) {
      const int c = parent[d];
      const std::size_t p = *arcs[c][d].begin();
      arcs[c][d].erase(arcs[c][d].begin());
      arcs[d][c].insert(p);
      host_[p] = cls_at(d);
      shipped_[p] = layout_.class_of(pairs_[p].first) == cls_at(c) ? 0 : 1;
      --loads[c];
      ++loads[d];
    }
    ++augmentations;
    check(excess() < before, ErrorCode::kInternal, "balancing step did not reduce the excess");
  }
  if (opts_.strict) {
    for (auto l : loads) check(l == cap, ErrorCode::kBalancingFailed, "unequal class loads");
  }
  metrics_["balance"] = {{"initial_loads", initial}, {"final_loads", loads},
                         {"augmentations", augmentations}, {"cap", cap}};
}

void KmmRouter::swarm() {
  phase_ = "swarm";
  for (const auto& p : pairs_) {
    hosted_[p.first] = 1;
    hosted_[p.second] = 1;
  }
  std::size_t one_step = 0, two_step = 0, colocated = 0;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    if (shipped_[p] < 0) continue;
    const std::size_t t = 2 * p + static_cast<std::size_t>(shipped_[p]);
    auto path = swarm_path(layout_, head_[t][0], host_[p]);
    if (auto clash = ledger_.claim(path)) {
      check(false, ErrorCode::kEdgeConflict,
            "edge (" + std::to_string(clash->u) + "," + std::to_string(clash->v) + ") used twice");
    }
    (path.size() == 2 ? one_step : two_step) += 1;
    for (std::size_t i = 1; i < path.size(); ++i) ++hosted_[path[i]];
    head_[t] = path;
    const Vertex partner = head_[t ^ 1].back();
    if (path.back() == partner) {
      joined_[p] = 1;
      Path r{path};
      finished_[p] = shipped_[p] == 0 ? r : reversed(r);
      ++colocated;
    }
  }
  std::size_t max_hosted = 0, max_edges = 0;
  for (Vertex v = 0; v < g_.num_vertices(); ++v) {
    swarm_edges_[v] = static_cast<std::uint32_t>(ledger_.used_at(v));
    max_hosted = std::max<std::size_t>(max_hosted, hosted_[v]);
    max_edges = std::max<std::size_t>(max_edges, swarm_edges_[v]);
  }
  metrics_["swarm"] = {{"edges", ledger_.used_count()}, {"one_step", one_step},
                       {"two_step", two_step}, {"colocated", colocated},
                       {"max_hosted", max_hosted}, {"max_edges", max_edges}};
  check(max_hosted <= 5, ErrorCode::kInternal, "a vertex hosts " + std::to_string(max_hosted));
  check(max_edges <= 8, ErrorCode::kInternal, "a vertex used " + std::to_string(max_edges) + " edges");
}

void KmmRouter::lineup() {
  phase_ = "lineup";
  const std::size_t half = m_ / 2;
  const std::size_t mm = m_ * m_;
  std::vector<std::uint32_t> out_edges(g_.num_vertices(), 0);
  std::vector<std::uint32_t> in_edges(g_.num_vertices(), 0);
  json per_class = json::array();
  const std::size_t edges_before = ledger_.used_count();

  for (int ci = 0; ci < 4; ++ci) {
    const ClassId c = cls_at(ci);
    const ClassId nc = next(c);
    const Factor f = flips(c);
    std::vector<std::size_t> members;
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      if (host_[p] == c && !joined_[p]) members.push_back(p);
    json info = {{"class", to_string(c)}, {"pairs", members.size()}};
    if (members.empty()) {
      per_class.push_back(info);
      continue;
    }
    check(members.size() <= m_ * half, ErrorCode::kMatchingFailed,
          std::string("class ") + to_string(c) + " hosts too many pairs");

    const std::size_t q = members.size();
    std::vector<std::array<BVertex, 2>> hosts(q);
    std::vector<std::array<std::uint32_t, 2>> local(q);  // host index within the class
    std::vector<char> admissible(q * m_, 0);
    BipartiteGraph bg(q, m_ * half);
    std::size_t min_cols = m_;
    for (std::size_t i = 0; i < q; ++i) {
      const std::size_t p = members[i];
      for (int s = 0; s < 2; ++s) {
        hosts[i][s] = layout_.coords(head_[2 * p + s].back());
        local[i][s] = hosts[i][s].u * static_cast<std::uint32_t>(m_) + hosts[i][s].v;
      }
      std::size_t cols = 0;
      for (std::uint32_t L = 0; L < m_; ++L) {
        bool ok = true;
        for (int s = 0; s < 2 && ok; ++s) {
          const Vertex land = layout_.vertex(on_line(nc, f, kept(hosts[i][s], f), L));
          ok = ledger_.is_free(head_[2 * p + s].back(), land);
        }
        if (!ok) continue;
        admissible[i * m_ + L] = 1;
        ++cols;
      }
      min_cols = std::min(min_cols, cols);
      bg.reserve(static_cast<std::uint32_t>(i), cols * half);
      for (std::uint32_t L = 0; L < m_; ++L) {
        if (!admissible[i * m_ + L]) continue;
        for (std::size_t s = 0; s < half; ++s)
          bg.add_edge(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(L * half + s));
      }
    }
    const Matching match = max_matching(bg);
    info["min_degree"] = min_cols * half;
    info["degree_bound"] = static_cast<long long>(mm / 2) - 16 * static_cast<long long>(m_);
    info["matching_size"] = match.size;
    check(match.size == q, ErrorCode::kMatchingFailed,
          std::string("class ") + to_string(c) + ": matched " + std::to_string(match.size) +
              " of " + std::to_string(q) + " pairs to columns");

    // collision repair: two pairs in one column must not share a host vertex
    std::vector<std::uint32_t> col(q);
    std::vector<std::set<std::size_t>> in_col(m_);
    std::vector<std::uint8_t> count(m_ * mm, 0);
    for (std::size_t i = 0; i < q; ++i) {
      col[i] = static_cast<std::uint32_t>(match.left_to_right[i]) / static_cast<std::uint32_t>(half);
      in_col[col[i]].insert(i);
      for (int s = 0; s < 2; ++s) ++count[col[i] * mm + local[i][s]];
    }
    std::size_t current = 0;
    for (auto x : count) current += static_cast<std::size_t>(x) * (x > 0 ? x - 1 : 0) / 2;
    auto bump = [&](std::size_t at, int delta) {
      if (delta > 0) {
        current += count[at]++;
      } else {
        current -= --count[at];
      }
    };
    auto shares = [&](std::size_t i, std::uint32_t spot) {
      return local[i][0] == spot || local[i][1] == spot;
    };
    info["initial_collisions"] = current;
    std::size_t repairs = 0;
    while (current > 0) {
      std::size_t x = q;
      for (std::size_t i = 0; i < q && x == q; ++i)
        for (int s = 0; s < 2; ++s)
          if (count[col[i] * mm + local[i][s]] >= 2) x = i;
      const std::uint32_t L = col[x];
      std::optional<std::size_t> pick;
      for (std::uint32_t L2 = 0; L2 < m_ && !pick; ++L2) {
        if (L2 == L || !admissible[x * m_ + L2]) continue;
        if (count[L2 * mm + local[x][0]] > 1 || count[L2 * mm + local[x][1]] > 1) continue;
        for (std::size_t y : in_col[L2]) {
          if (!admissible[y * m_ + L]) continue;
          bool ok = true;
          for (int s = 0; s < 2 && ok; ++s)  // x lands in L2 with y gone
            ok = count[L2 * mm + local[x][s]] - (shares(y, local[x][s]) ? 1 : 0) == 0;
          for (int s = 0; s < 2 && ok; ++s)  // y lands in L with x gone
            ok = count[L * mm + local[y][s]] - (shares(x, local[y][s]) ? 1 : 0) == 0;
          if (ok) {
            pick = y;
            break;
          }
        }
      }
      check(pick.has_value(), ErrorCode::kRepairStalled,
            std::string("class ") + to_string(c) + ": no improving swap, " +
                std::to_string(current) + " collisions left");
      const std::size_t y = *pick;
      const std::uint32_t L2 = col[y];
      const std::size_t before = current;
      for (int s = 0; s < 2; ++s) {
        bump(L * mm + local[x][s], -1);
        bump(L2 * mm + local[y][s], -1);
      }
      for (int s = 0; s < 2; ++s) {
        bump(L2 * mm + local[x][s], +1);
        bump(L * mm + local[y][s], +1);
      }
      in_col[L].erase(x);
      in_col[L2].erase(y);
      in_col[L2].insert(x);
      in_col[L].insert(y);
      col[x] = L2;
      col[y] = L;
      ++repairs;
      check(current < before, ErrorCode::kInternal, "repair swap did not reduce collisions");
    }
    info["repairs"] = repairs;

    // ship both terminals of every pair into its column
    std::size_t same_line = 0;
    for (std::size_t i = 0; i < q; ++i) {
      const std::size_t p = members[i];
      column_[p] = static_cast<int>(col[i]);
      for (int s = 0; s < 2; ++s) {
        const Vertex from = head_[2 * p + s].back();
        const Vertex land = layout_.vertex(on_line(nc, f, kept(hosts[i][s], f), col[i]));
        const std::array<Vertex, 2> hop{from, land};
        if (auto clash = ledger_.claim(hop)) {
          check(false, ErrorCode::kEdgeConflict,
                "edge (" + std::to_string(clash->u) + "," + std::to_string(clash->v) +
                    ") used twice");
        }
        landing_[2 * p + s] = land;
        ++out_edges[from];
        ++in_edges[land];
      }
      if (landing_[2 * p] == landing_[2 * p + 1]) {
        finished_[p] = through(p, std::span<const Vertex>(&landing_[2 * p], 1));
        joined_[p] = 1;
        ++same_line;
      }
    }
    info["same_line_joins"] = same_line;
    per_class.push_back(info);
  }

  std::size_t max_total = 0, max_in = 0;
  for (Vertex v = 0; v < g_.num_vertices(); ++v) {
    max_total = std::max<std::size_t>(max_total, swarm_edges_[v] + out_edges[v]);
    max_in = std::max<std::size_t>(max_in, in_edges[v]);
  }
  metrics_["lineup"] = {{"classes", per_class}, {"edges", ledger_.used_count() - edges_before},
                        {"max_edges_swarm_plus_out", max_total}, {"max_incoming", max_in}};
  check(max_total <= 13, ErrorCode::kInternal,
        "a vertex used " + std::to_string(max_total) + " edges in swarm and line-up");
}

void KmmRouter::final_match() {
  phase_ = "final";
  const std::size_t half = m_ / 2;
  json per_class = json::array();
  const std::size_t edges_before = ledger_.used_count();
  long long min_degree = -1;
  for (int ci = 0; ci < 4; ++ci) {
    const ClassId c = cls_at(ci);
    const ClassId after = next(next(c));
    const Factor f = flips(c);
    std::vector<std::vector<std::size_t>> by_col(m_);
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      if (host_[p] == c && !joined_[p]) by_col[static_cast<std::size_t>(column_[p])].push_back(p);
    std::size_t widened = 0, columns = 0;
    for (std::uint32_t L = 0; L < m_; ++L) {
      const auto& list = by_col[L];
      if (list.empty()) continue;
      ++columns;
      std::optional<Matching> found;
      for (const std::size_t width : {half, m_}) {
        BipartiteGraph bg(list.size(), width);
        for (std::size_t i = 0; i < list.size(); ++i) {
          const Vertex a = landing_[2 * list[i]];
          const Vertex b = landing_[2 * list[i] + 1];
          for (std::uint32_t w = 0; w < width; ++w) {
            const Vertex meet = layout_.vertex(on_line(after, f, w, L));
            if (ledger_.is_free(a, meet) && ledger_.is_free(b, meet))
              bg.add_edge(static_cast<std::uint32_t>(i), w);
          }
        }
        if (width == half) {
          const auto d = static_cast<long long>(bg.min_left_degree());
          min_degree = min_degree < 0 ? d : std::min(min_degree, d);
        }
        Matching mt = max_matching(bg);
        if (mt.size == list.size()) {
          found = std::move(mt);
          break;
        }
        if (width == half) ++widened;
      }
      check(found.has_value(), ErrorCode::kMatchingFailed,
            std::string("class ") + to_string(c) + " column " + std::to_string(L) +
                ": no final assignment for " + std::to_string(list.size()) + " pairs");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::size_t p = list[i];
        const auto w = static_cast<std::uint32_t>(found->left_to_right[i]);
        const Vertex meet = layout_.vertex(on_line(after, f, w, L));
        const std::array<Vertex, 3> join{landing_[2 * p], meet, landing_[2 * p + 1]};
        if (auto clash = ledger_.claim(join)) {
          check(false, ErrorCode::kEdgeConflict,
                "edge (" + std::to_string(clash->u) + "," + std::to_string(clash->v) +
                    ") used twice");
        }
        finished_[p] = through(p, join);
        joined_[p] = 1;
      }
    }
    per_class.push_back({{"class", to_string(c)}, {"columns", columns}, {"widened", widened}});
  }
  metrics_["final"] = {{"classes", per_class}, {"edges", ledger_.used_count() - edges_before},
                       {"min_degree", min_degree},
                       {"degree_bound", static_cast<long long>(half) - 26}};
  metrics_["edges_total"] = ledger_.used_count();
  phase_ = "done";
}

Path KmmRouter::through(std::size_t p, std::span<const Vertex> middle) const {
  Path r{head_[2 * p]};
  r.vertices.insert(r.vertices.end(), middle.begin(), middle.end());
  const auto& tail = head_[2 * p + 1];
  r.vertices.insert(r.vertices.end(), tail.rbegin(), tail.rend());
  return r;
}

PathSystem KmmRouter::system() const {
  PathSystem s;
  s.routes = finished_;
  return s;
}

Graph kmm_product(std::size_t m) {
  const Graph k = complete_bipartite(m, m);
  return cartesian_product(k, k);
}

KmmOutcome route_full(const Graph& product, std::size_t m, const Pairing& pairing,
                      KmmOptions opts) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::kPreconditionViolated, what);
  };
  require(m % 2 == 0, "m must be even");
  require(m >= (opts.strict ? 104u : 6u),
          opts.strict ? "strict mode needs m >= 104" : "explore mode needs m >= 6");
  const std::size_t n = 4 * m * m;
  require(product.num_vertices() == n && product.num_edges() == 4 * m * m * m,
          "graph is not K_{m,m} x K_{m,m} for m=" + std::to_string(m));
  for (Vertex v = 0; v < n; ++v) require(product.degree(v) == 2 * m, "graph is not 2m-regular");
  for (const auto& p : pairing.pairs()) require(p.first < n && p.second < n, "terminal outside graph");
  if (opts.strict) require(pairing.size() == 2 * m * m, "strict mode needs a full pairing");

  KmmOutcome out;
  KmmRouter router(product, m, pairing, opts);
  try {
    router.choose_destinations();
    router.swarm();
    router.lineup();
    router.final_match();
  } catch (const Error& e) {
    out.failed_phase = router.phase();
    out.error = e.code();
    out.message = e.what();
    out.metrics = router.metrics();
    return out;
  }
  out.system = router.system();
  out.report = verify(product, pairing, out.system);
  out.metrics = router.metrics();
  out.ok = out.report.ok;
  if (!out.ok) {
    out.failed_phase = "verify";
    out.message = "router output rejected by verify";
  }
  return out;
}

}  // namespace pathpair
