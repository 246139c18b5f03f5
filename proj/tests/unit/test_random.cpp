#include <set>

#include <gtest/gtest.h>

#include "pathpair/error.hpp"
#include "pathpair/random.hpp"

namespace pathpair {
namespace {

TEST(RngTest, EngineIsPinned) {
  // value fixed by the C++ standard for mt19937_64
  Rng rng(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(RngTest, BelowStaysInRange) {
  Rng rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[rng.below(7)];
  for (int h : hits) {
    EXPECT_GT(h, 850);
    EXPECT_LT(h, 1150);
  }
  EXPECT_THROW(rng.below(0), Error);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(RandomPairingTest, FullPairingCoversEverything) {
  const Pairing p = random_full_pairing(4 * 6 * 6, 9);
  EXPECT_EQ(p.size(), 72u);
  std::set<Vertex> seen;
  for (const auto& pr : p.pairs()) {
    seen.insert(pr.first);
    seen.insert(pr.second);
  }
  EXPECT_EQ(seen.size(), 144u);
  EXPECT_THROW(random_full_pairing(5, 0), Error);
}

TEST(RandomPairingTest, SeedRepeats) {
  EXPECT_EQ(random_pairing(100, 20, 42), random_pairing(100, 20, 42));
  EXPECT_NE(random_pairing(100, 20, 42), random_pairing(100, 20, 43));
}

TEST(RandomPairingTest, KMode) {
  const Pairing p = random_pairing(16, 4, 0);
  std::set<Vertex> seen;
  for (const auto& pr : p.pairs()) {
    seen.insert(pr.first);
    seen.insert(pr.second);
  }
  EXPECT_EQ(seen.size(), 8u);
  EXPECT_THROW(random_pairing(16, 9, 0), Error);
}

}  // namespace
}  // namespace pathpair
