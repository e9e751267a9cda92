#pragma once

#include <cstdint>

namespace splitsim {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: the value depends only on (seed, node id, round,
/// draw index), so results do not depend on the order nodes are evaluated in.
class NodeRng {
 public:
  constexpr NodeRng(std::uint64_t seed, std::uint64_t node_id, std::uint64_t round) noexcept
      : key_(mix64(mix64(mix64(seed) ^ node_id) ^ (round * 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t next() noexcept { return mix64(key_ + counter_++ * 0xd1b54a32d192ed03ULL); }

  /// Uniform in [0, 1).
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound), bound > 0. Rejection sampling keeps it unbiased.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Fresh seed for retry attempt `attempt` of a randomized solver.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t attempt) noexcept {
  return attempt == 0 ? seed : mix64(seed ^ mix64(attempt + 0x5851f42d4c957f2dULL));
}

}  // namespace splitsim
