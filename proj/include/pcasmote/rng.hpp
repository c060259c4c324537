#pragma once

#include <cstdint>

namespace pcasmote {

/// SplitMix64 stream. The exact update rule is part of the public contract
/// (see README, "Random stream"), so other implementations can reproduce runs:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// uniform01() uses the top 53 bits: (next() >> 11) * 2^-53, in [0, 1).
/// uniform_index(n) uses the high word of the 128-bit product next() * n.
class Rng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr std::uint64_t uniform_index(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

  /// Seed for the i-th independent sub-stream of `seed`: first output of a
  /// generator seeded with seed ^ ((i + 1) * kGolden).
  static constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    Rng r(seed ^ ((index + 1) * kGolden));
    return r.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace pcasmote
