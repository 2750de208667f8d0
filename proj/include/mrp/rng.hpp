#pragma once

#include <cmath>
#include <cstdint>

namespace mrp {

/// SplitMix64: a counter-based 64-bit generator (Steele, Lea & Flood's
/// mixing function over an additive counter). Substreams are keyed by
/// (seed, stream), so trajectory `k` draws the same numbers no matter
/// which worker runs it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix(mix(seed) + 0x9E3779B97F4A7C15ULL * (stream + 1)));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Inverse-CDF exponential with the given mean (0 collapses to 0).
  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

 private:
  std::uint64_t state_;
};

}  // namespace mrp
