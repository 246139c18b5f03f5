#include "pathpair/constructions.hpp"

#include <algorithm>
#include <string>

#include "pathpair/error.hpp"

namespace pathpair {

BlownUpPath blown_up_path(std::size_t k, std::size_t m) {
  if (k == 0 || m == 0) {
    throw Error(ErrorCode::kInvalidArgument, "blown_up_path: k and m must be at least 1");
  }
  BlownUpPath b{k, m, {}};
  std::vector<Edge> edges;
  edges.reserve(k * m * (m - 1) / 2 + (k - 1) * m * m);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t j2 = j + 1; j2 < m; ++j2) edges.push_back({b.vertex(i, j), b.vertex(i, j2)});
      if (i + 1 < k)
        for (std::size_t j2 = 0; j2 < m; ++j2) edges.push_back({b.vertex(i, j), b.vertex(i + 1, j2)});
    }
  }
  std::vector<Label> labels;
  labels.reserve(k * m);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < m; ++j) labels.emplace_back(ClassTag{i, j});
  b.graph = Graph::from_edges(k * m, std::move(edges), std::move(labels));
  return b;
}

AdversarialInstance star_product_blocking(std::size_t b, std::size_t d) {
  if (b < 2 || d < 2) {
    throw Error(ErrorCode::kInvalidArgument, "star_product_blocking: b and d must be at least 2");
  }
  AdversarialInstance inst;
  inst.graph = cartesian_product(star(b), star(d));
  const std::size_t width = d + 1;
  auto at = [width](std::size_t g, std::size_t h) { return static_cast<Vertex>(g * width + h); };

  std::vector<TerminalPair> pairs;
  pairs.push_back({at(2, 2), at(1, 1)});  // x with y = C ∩ R
  pairs.push_back({at(0, 1), at(1, 0)});  // the two hubs next to y
  std::vector<Vertex> rest;
  for (std::size_t h = 2; h <= d; ++h) rest.push_back(at(1, h));
  for (std::size_t g = 2; g <= b; ++g) rest.push_back(at(g, 1));
  std::sort(rest.begin(), rest.end());
  if (rest.size() % 2 == 1) rest.push_back(d >= 3 ? at(2, 3) : at(3, 2));
  for (std::size_t i = 0; i < rest.size(); i += 2) pairs.push_back({rest[i], rest[i + 1]});

  inst.pairing = Pairing::checked(std::move(pairs), inst.graph.num_vertices());
  inst.claim = Claim::kInfeasible;
  inst.description = "K_{1," + std::to_string(b) + "} x K_{1," + std::to_string(d) +
                     "} blocking placement, " + std::to_string(inst.pairing.size()) + " pairs";
  return inst;
}

AdversarialInstance cut_ok_not_pp(std::size_t k, CutVariant variant, std::size_t clique_size) {
  AdversarialInstance inst;
  std::vector<Edge> edges;
  std::vector<TerminalPair> pairs;
  const Vertex centre = 0;
  auto leaf = [](std::size_t i) { return static_cast<Vertex>(i); };               // 1..k
  auto clique = [k](std::size_t j) { return static_cast<Vertex>(k + j); };        // 1..N

  if (variant == CutVariant::kCliqueTail) {
    const std::size_t n_clique = clique_size;
    if (k < 2 || n_clique < 2 * k) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cut_ok_not_pp(clique_tail): need k >= 2 and N >= 2k");
    }
    for (std::size_t i = 1; i <= k; ++i) edges.push_back({centre, leaf(i)});
    for (std::size_t a = 1; a <= n_clique; ++a)
      for (std::size_t c = a + 1; c <= n_clique; ++c) edges.push_back({clique(a), clique(c)});
    for (std::size_t i = 1; i <= k; ++i) edges.push_back({leaf(i), clique(i)});
    // centre and k-2 leaves go to unmatched clique vertices, counted down from N
    pairs.push_back({centre, clique(n_clique)});
    for (std::size_t i = 1; i + 2 <= k; ++i) pairs.push_back({leaf(i), clique(n_clique - i)});
    pairs.push_back({leaf(k - 1), leaf(k)});
    inst.graph = Graph::from_edges(1 + k + n_clique, std::move(edges));
    inst.description = "K_{1," + std::to_string(k) + "} matched into K_" +
                       std::to_string(n_clique);
  } else {
    if (k < 6) throw Error(ErrorCode::kInvalidArgument, "cut_ok_not_pp(matched): need k >= 6");
    const std::size_t n_clique = k - 1;
    for (std::size_t i = 1; i <= k; ++i) edges.push_back({centre, leaf(i)});
    for (std::size_t a = 1; a <= n_clique; ++a)
      for (std::size_t c = a + 1; c <= n_clique; ++c) edges.push_back({clique(a), clique(c)});
    for (std::size_t i = 1; i <= n_clique; ++i) edges.push_back({leaf(i), clique(i)});
    edges.push_back({leaf(k), clique(1)});
    pairs.push_back({centre, clique(n_clique)});
    for (std::size_t i = 1; i + 2 <= k; ++i) pairs.push_back({leaf(i), clique(i % (k - 2) + 1)});
    pairs.push_back({leaf(k - 1), leaf(k)});
    inst.graph = Graph::from_edges(2 * k, std::move(edges));
    inst.description = "K_{1," + std::to_string(k) + "} and K_" + std::to_string(n_clique) +
                       " joined by a matching";
  }
  inst.pairing = Pairing::checked(std::move(pairs), inst.graph.num_vertices());
  inst.claim = Claim::kInfeasible;
  return inst;
}

namespace {

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

GridViolation grid_violating_subgrid(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "grid_violating_subgrid: d must be >= 2");
  if (d > 12) throw Error(ErrorCode::kInvalidArgument, "grid_violating_subgrid: d too large");
  GridViolation out;
  out.sides.assign(d - 1, 2 * d);
  out.sides.push_back(2 * d + 1);
  const std::uint64_t side = 2 * d;
  out.size = ipow(side, d - 1) * (side + 1);
  out.boundary = 2 * ((d - 1) * ipow(side, d - 2) * (side + 1) + ipow(side, d - 1));
  return out;
}

TorusBox torus_with_box(std::span<const std::size_t> cycle_lengths,
                        std::span<const std::size_t> box_sides) {
  if (cycle_lengths.empty() || cycle_lengths.size() != box_sides.size()) {
    throw Error(ErrorCode::kInvalidArgument, "torus_with_box: dimension mismatch");
  }
  for (std::size_t i = 0; i < box_sides.size(); ++i) {
    if (box_sides[i] == 0 || box_sides[i] > cycle_lengths[i]) {
      throw Error(ErrorCode::kInvalidArgument, "torus_with_box: box side exceeds its cycle");
    }
  }
  TorusBox out;
  out.torus = cycle(cycle_lengths[0]);
  for (std::size_t i = 1; i < cycle_lengths.size(); ++i)
    out.torus = cartesian_product(out.torus, cycle(cycle_lengths[i]));

  std::vector<std::size_t> idx(box_sides.size(), 0);
  while (true) {
    std::size_t v = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) v = v * cycle_lengths[i] + idx[i];
    out.box.push_back(static_cast<Vertex>(v));
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < box_sides[pos]) break;
      idx[pos] = 0;
      if (pos == 0) {
        std::sort(out.box.begin(), out.box.end());
        return out;
      }
    }
  }
}

}  // namespace pathpair
