#pragma once

#include <cstdint>

#include "mrp/chain.hpp"
#include "mrp/matrix.hpp"
#include "mrp/rng.hpp"

namespace mrp {

enum class HoldingShape { Exponential, Deterministic, TwoPoint };

const char* to_string(HoldingShape shape);

/// Per-transition holding time sampler whose analytical mean reproduces
/// the spec's conditional mean E[hold | i -> j] exactly. The two-point
/// shape puts mass 2/3 on mean/2 and 1/3 on 2*mean.
class HoldingModel {
 public:
  static HoldingModel from_spec(const MrpSpec& spec, HoldingShape shape);

  HoldingShape shape() const { return shape_; }
  double conditional_mean(std::size_t i, std::size_t j) const { return mean_(i, j); }
  double sample(std::size_t i, std::size_t j, SplitMix64& rng) const;

 private:
  HoldingModel(HoldingShape shape, Matrix mean) : shape_(shape), mean_(std::move(mean)) {}
  HoldingShape shape_;
  Matrix mean_;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo mean of the accumulated holding time from `from` until the
/// first entry into `to` (first return when equal; at least one jump is
/// always taken). Trajectory k draws from substream (seed, k), so results
/// are bit-identical for any worker count.
Estimate simulate_hitting(const MrpSpec& spec, const HoldingModel& model, std::size_t from,
                          std::size_t to, std::uint64_t trials, std::uint64_t seed,
                          unsigned workers = 1);

/// Jump-chain visit frequencies over `steps` jumps after a burn-in of
/// steps/10, started in state 1. Periodic chains yield Cesaro
/// frequencies.
Vec estimate_embedded(const MrpSpec& spec, std::uint64_t steps, std::uint64_t seed);

/// Fraction of elapsed time spent in each state over [horizon/10,
/// horizon].
Vec estimate_occupancy(const MrpSpec& spec, const HoldingModel& model, double horizon,
                       std::uint64_t seed);

}  // namespace mrp
