#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pathpair/pairing.hpp"

namespace pathpair {

// Seeded generator with platform-independent output. The engine is
// std::mt19937_64 (its sequence is fixed by the standard); bounded draws use
// rejection sampling instead of std::uniform_int_distribution, whose output
// is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Fisher-Yates, drawing indices from below().
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// `count` disjoint pairs drawn uniformly from the vertices [0, vertex_count):
// shuffle all vertices, pair positions (0,1), (2,3), ... Throws
// Error(kInvalidArgument) if 2*count > vertex_count.
Pairing random_pairing(std::size_t vertex_count, std::size_t count, std::uint64_t seed);

// All vertices paired; vertex_count must be even.
Pairing random_full_pairing(std::size_t vertex_count, std::uint64_t seed);

}  // namespace pathpair
