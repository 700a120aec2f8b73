#pragma once

#include <cstdint>

namespace vaxwane {

// Deterministic random streams. Every simulated quantity in this project is
// derived from a SplitMix64 stream whose state is built with mix_seed, so
// results are reproducible bit-for-bit across platforms and worker counts.
// Constants are the SplitMix64 finalizer of Steele, Lea & Flood (2014) as
// published by Vigna.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += kGoldenGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Combines a seed with a subordinate key (cell hash, candidate index,
/// replication index) into the state of an independent substream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
  std::uint64_t z = seed ^ (key * 0xBF58476D1CE4E5B9ull + kGoldenGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  /// Uniform draw on the open interval (0, 1); both endpoints are excluded so
  /// that -log(u) is always finite and strictly positive.
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace vaxwane
