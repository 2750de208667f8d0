#pragma once

// Shared fixtures: the canonical small examples and the seeded random
// chain population used by the property suites.

#include <cstdint>

#include "mrp/chain.hpp"
#include "mrp/ctmc.hpp"
#include "mrp/errors.hpp"
#include "mrp/matrix.hpp"
#include "mrp/rng.hpp"

namespace testsupport {

using mrp::Matrix;
using mrp::Vec;

inline constexpr std::uint64_t kPopulationSeed = 0x5EEDC0DE2024ULL;

// Two-state MRP: P = [[0.5, 0.5], [0.25, 0.75]], mu = (2, 4).
inline mrp::MrpSpec mrp2() {
  return mrp::MrpSpec::with_means(
      mrp::validate_chain(Matrix{{0.5, 0.5}, {0.25, 0.75}}), {2.0, 4.0});
}

// Alternating two-state chain with unit holding times.
inline mrp::MrpSpec dtmc2() {
  return mrp::MrpSpec::dtmc(mrp::validate_chain(Matrix{{0.0, 1.0}, {1.0, 0.0}}));
}

// Two-state continuous-time chain with exit rates (1, 2).
inline mrp::Generator ctmc2_gen() {
  return mrp::validate_generator(Matrix{{-1.0, 1.0}, {2.0, -2.0}});
}

// Three-state birth-death process with rates alpha = (1, 2), beta = (1, 2).
inline mrp::Generator bd3_gen() {
  return mrp::bd_generator(mrp::BirthDeathParams{{1.0, 2.0}, {1.0, 2.0}});
}

// Dirichlet(1,...,1) rows (normalized exponentials) with optional support
// thinning; rejection on reducibility.
inline Matrix random_stochastic(std::size_t m, mrp::SplitMix64& rng, double keep_prob = 0.8) {
  for (;;) {
    Matrix p(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const bool keep = m == 1 || rng.uniform() < keep_prob;
        p(i, j) = keep ? rng.exponential(1.0) : 0.0;
        sum += p(i, j);
      }
      if (sum <= 0.0) {
        p(i, (i + 1) % m) = 1.0;
        sum = 1.0;
      }
      for (std::size_t j = 0; j < m; ++j) p(i, j) /= sum;
    }
    try {
      mrp::validate_chain(p);
      return p;
    } catch (const mrp::Error&) {
      // reducible draw; retry
    }
  }
}

enum class MomentPattern { MeansOnly, FullMatrix, ConstantMeans };

// Random irreducible MRP with sojourn means in [0.1, 10]. The population
// cycles through moment patterns so that full-moment specs and
// constant-mean specs (the "if" side of the constancy equivalences) are
// both exercised.
inline mrp::MrpSpec random_mrp(std::size_t m, mrp::SplitMix64& rng, MomentPattern pattern) {
  Matrix p = random_stochastic(m, rng);
  if (pattern == MomentPattern::ConstantMeans) {
    const double c = 0.1 + 9.9 * rng.uniform();
    return mrp::MrpSpec::with_means(mrp::validate_chain(p), Vec(m, c));
  }
  if (pattern == MomentPattern::FullMatrix) {
    Matrix moments(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (p(i, j) > 0.0) moments(i, j) = p(i, j) * (0.1 + 9.9 * rng.uniform());
    return mrp::MrpSpec::with_moments(mrp::validate_chain(p), moments);
  }
  Vec mu(m);
  for (double& x : mu) x = 0.1 + 9.9 * rng.uniform();
  return mrp::MrpSpec::with_means(mrp::validate_chain(p), mu);
}

inline MomentPattern pattern_for(std::size_t index) {
  if (index % 5 == 4) return MomentPattern::ConstantMeans;
  if (index % 3 == 2) return MomentPattern::FullMatrix;
  return MomentPattern::MeansOnly;
}

// Population case k: state count cycles over {2, ..., 12}.
inline mrp::MrpSpec population_case(std::size_t k, mrp::SplitMix64& rng) {
  const std::size_t m = 2 + k % 11;
  return random_mrp(m, rng, pattern_for(k));
}

// Random stable generator with off-diagonal rates in [0.1, 10] on a
// thinned support.
inline mrp::Generator random_generator(std::size_t m, mrp::SplitMix64& rng,
                                       double keep_prob = 0.8) {
  for (;;) {
    Matrix q(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        const bool keep = m == 2 || rng.uniform() < keep_prob;
        q(i, j) = keep ? 0.1 + 9.9 * rng.uniform() : 0.0;
        sum += q(i, j);
      }
      if (sum <= 0.0) {
        q(i, (i + 1) % m) = 1.0;
        sum = 1.0;
      }
      q(i, i) = -sum;
    }
    try {
      mrp::Generator gen = mrp::validate_generator(q);
      mrp::mrp_from_generator(gen);
      return gen;
    } catch (const mrp::Error&) {
      // reducible embedded chain; retry
    }
  }
}

}  // namespace testsupport
