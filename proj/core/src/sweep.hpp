#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "pathpair/pairing.hpp"

namespace pathpair::detail {

// Routes on G(k,m) with the class-i, slot-j vertex at index i*m + j. Returns
// routes index-aligned with `pairs`; per-class statistics are appended to
// `stats` when given. Throws Error(kSweepInvariantViolated) on overload.
std::vector<Path> sweep_routes(std::size_t k, std::size_t m, std::span<const TerminalPair> pairs,
                               nlohmann::json* stats = nullptr);

}  // namespace pathpair::detail
