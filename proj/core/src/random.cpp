#include "pathpair/random.hpp"

#include <numeric>
#include <string>

#include "pathpair/error.hpp"

namespace pathpair {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Rng::below: bound must be positive");
  // largest multiple of bound that fits, so the accepted range is unbiased
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t x = engine_();
  while (x > limit) x = engine_();
  return x % bound;
}

Pairing random_pairing(std::size_t vertex_count, std::size_t count, std::uint64_t seed) {
  if (2 * count > vertex_count) {
    throw Error(ErrorCode::kInvalidArgument, "random_pairing: " + std::to_string(count) +
                                                 " pairs need " + std::to_string(2 * count) +
                                                 " vertices, graph has " +
                                                 std::to_string(vertex_count));
  }
  std::vector<Vertex> order(vertex_count);
  std::iota(order.begin(), order.end(), Vertex{0});
  Rng rng(seed);
  rng.shuffle(std::span<Vertex>(order));
  std::vector<TerminalPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pairs.push_back({order[2 * i], order[2 * i + 1]});
  return Pairing(std::move(pairs));
}

Pairing random_full_pairing(std::size_t vertex_count, std::uint64_t seed) {
  if (vertex_count % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "random_full_pairing: odd vertex count");
  }
  return random_pairing(vertex_count, vertex_count / 2, seed);
}

}  // namespace pathpair
