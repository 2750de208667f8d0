#include "mrp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "mrp/errors.hpp"

namespace mrp {

namespace {

std::size_t sample_next(const Matrix& p, std::size_t state, SplitMix64& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last_positive = state;
  for (std::size_t j = 0; j < p.cols(); ++j) {
    const double pj = p(state, j);
    if (pj <= 0.0) continue;
    last_positive = j;
    acc += pj;
    if (u < acc) return j;
  }
  return last_positive;  // u landed in the rounding slack of the row sum
}

// Deterministic pairwise reduction; the result does not depend on how the
// values were produced.
double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

}  // namespace

const char* to_string(HoldingShape shape) {
  switch (shape) {
    case HoldingShape::Exponential: return "exponential";
    case HoldingShape::Deterministic: return "deterministic";
    case HoldingShape::TwoPoint: return "two-point";
  }
  return "?";
}

HoldingModel HoldingModel::from_spec(const MrpSpec& spec, HoldingShape shape) {
  const std::size_t m = spec.size();
  const Matrix& p = spec.chain().p();
  Matrix mean(m, m);
  if (spec.moments().has_value()) {
    const Matrix& p1 = *spec.moments();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (p(i, j) > 0.0) mean(i, j) = p1(i, j) / p(i, j);
  } else {
    const Vec& mu = spec.mean_sojourn();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (p(i, j) > 0.0) mean(i, j) = mu[i];
  }
  return HoldingModel(shape, std::move(mean));
}

double HoldingModel::sample(std::size_t i, std::size_t j, SplitMix64& rng) const {
  const double mean = mean_(i, j);
  switch (shape_) {
    case HoldingShape::Deterministic:
      return mean;
    case HoldingShape::Exponential:
      return rng.exponential(mean);
    case HoldingShape::TwoPoint:
      // mass 2/3 on mean/2 and 1/3 on 2*mean keeps the mean exact with
      // nonzero variance
      return rng.uniform() < 2.0 / 3.0 ? 0.5 * mean : 2.0 * mean;
  }
  return mean;
}

Estimate simulate_hitting(const MrpSpec& spec, const HoldingModel& model, std::size_t from,
                          std::size_t to, std::uint64_t trials, std::uint64_t seed,
                          unsigned workers) {
  if (trials == 0) throw Error(ErrorCode::BadSpec, "trials must be >= 1");
  if (from >= spec.size() || to >= spec.size())
    throw Error(ErrorCode::BadSpec, "state index out of range");
  const Matrix& p = spec.chain().p();

  std::vector<double> totals(trials);
  auto run_block = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t trial = lo; trial < hi; ++trial) {
      SplitMix64 rng = SplitMix64::substream(seed, trial);
      std::size_t state = from;
      double total = 0.0;
      do {
        const std::size_t next = sample_next(p, state, rng);
        total += model.sample(state, next, rng);
        state = next;
      } while (state != to);
      totals[trial] = total;
    }
  };

  if (workers <= 1 || trials < 2 * workers) {
    run_block(0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t block = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = w * block;
      const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + block);
      if (lo >= hi) break;
      pool.emplace_back(run_block, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  const double mean = pairwise_sum(totals.data(), totals.size()) / static_cast<double>(trials);
  double sd = 0.0;
  if (trials > 1) {
    std::vector<double> sq(trials);
    for (std::uint64_t i = 0; i < trials; ++i) {
      const double d = totals[i] - mean;
      sq[i] = d * d;
    }
    sd = std::sqrt(pairwise_sum(sq.data(), sq.size()) / static_cast<double>(trials - 1));
  }
  return Estimate{mean, sd / std::sqrt(static_cast<double>(trials)), trials, seed};
}

Vec estimate_embedded(const MrpSpec& spec, std::uint64_t steps, std::uint64_t seed) {
  const Matrix& p = spec.chain().p();
  SplitMix64 rng = SplitMix64::substream(seed, 0);
  std::size_t state = 0;
  const std::uint64_t burn = steps / 10;
  for (std::uint64_t n = 0; n < burn; ++n) state = sample_next(p, state, rng);
  std::vector<std::uint64_t> counts(spec.size(), 0);
  for (std::uint64_t n = 0; n < steps; ++n) {
    state = sample_next(p, state, rng);
    ++counts[state];
  }
  Vec freq(spec.size());
  for (std::size_t i = 0; i < freq.size(); ++i)
    freq[i] = static_cast<double>(counts[i]) / static_cast<double>(steps);
  return freq;
}

Vec estimate_occupancy(const MrpSpec& spec, const HoldingModel& model, double horizon,
                       std::uint64_t seed) {
  if (!(horizon > 0.0)) throw Error(ErrorCode::BadSpec, "horizon must be positive");
  const Matrix& p = spec.chain().p();
  SplitMix64 rng = SplitMix64::substream(seed, 0);
  const double burn = horizon / 10.0;
  Vec occupied(spec.size(), 0.0);
  std::size_t state = 0;
  double clock = 0.0;
  while (clock < horizon) {
    const std::size_t next = sample_next(p, state, rng);
    const double hold = model.sample(state, next, rng);
    const double lo = std::max(clock, burn);
    const double hi = std::min(clock + hold, horizon);
    if (hi > lo) occupied[state] += hi - lo;
    clock += hold;
    state = next;
  }
  const double window = horizon - burn;
  for (double& x : occupied) x /= window;
  return occupied;
}

}  // namespace mrp
