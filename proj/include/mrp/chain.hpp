#pragma once

#include <cstddef>
#include <optional>

#include "mrp/matrix.hpp"

namespace mrp {

/// Row-stochastic transition matrix of an irreducible jump chain.
/// Instances only come out of validate_chain, so holders may assume the
/// invariants (entries in [0,1], rows summing to 1, strong connectivity).
class StochasticMatrix {
 public:
  std::size_t size() const { return p_.rows(); }
  const Matrix& p() const { return p_; }

  friend StochasticMatrix validate_chain(Matrix raw, double tol);

 private:
  explicit StochasticMatrix(Matrix p) : p_(std::move(p)) {}
  Matrix p_;
};

/// Validates a raw matrix as an irreducible row-stochastic transition
/// matrix. Rows whose sums deviate from 1 by at most `tol` are
/// renormalized; larger deviations raise RowSumViolation. Negative
/// entries raise NegativeEntry, non-square input NotSquare, and a support
/// graph that is not strongly connected raises Reducible.
StochasticMatrix validate_chain(Matrix raw, double tol = 1e-9);

/// Period of the chain (gcd of support-graph cycle lengths); 1 means
/// aperiodic.
std::size_t chain_period(const StochasticMatrix& chain);

enum class ChainKind { Dtmc, Mrp, Ctmc };

/// An irreducible Markov renewal process: the embedded jump chain plus
/// the first moments of the holding times, either as the full matrix
/// [mu_ij] or as the per-state mean sojourn vector. This is the universal
/// input type; discrete-time chains carry unit sojourns and continuous
/// -time chains arrive via the generator mapping.
class MrpSpec {
 public:
  static MrpSpec dtmc(StochasticMatrix chain);
  static MrpSpec with_means(StochasticMatrix chain, Vec mu, ChainKind kind = ChainKind::Mrp);
  static MrpSpec with_moments(StochasticMatrix chain, Matrix p1, ChainKind kind = ChainKind::Mrp);

  const StochasticMatrix& chain() const { return chain_; }
  std::size_t size() const { return chain_.size(); }
  ChainKind kind() const { return kind_; }

  /// Mean sojourn times mu_i (row sums of the moment matrix when full
  /// moments were given).
  const Vec& mean_sojourn() const { return mu_; }
  const std::optional<Matrix>& moments() const { return moments_; }

 private:
  MrpSpec(StochasticMatrix chain, Vec mu, std::optional<Matrix> moments, ChainKind kind)
      : chain_(std::move(chain)), mu_(std::move(mu)), moments_(std::move(moments)), kind_(kind) {}

  StochasticMatrix chain_;
  Vec mu_;
  std::optional<Matrix> moments_;
  ChainKind kind_;
};

/// The two stationary distributions of an MRP and the scalars tying them
/// together: pi for the embedded chain, varpi for the semi-Markov
/// process, lambda = piᵀmu (the mean asymptotic increment).
struct StationaryProfile {
  Vec pi;
  Vec varpi;
  Vec mu;
  double lambda = 0.0;

  Matrix Lambda() const { return Matrix::diagonal(mu); }
};

/// Stationary vector of the embedded chain, from the augmented linear
/// system (one stationarity equation replaced by the normalization).
Vec stationary_embedded(const StochasticMatrix& chain);

StationaryProfile stationary_profile(const MrpSpec& spec);

}  // namespace mrp
