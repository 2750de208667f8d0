#pragma once

#include "mrp/chain.hpp"
#include "mrp/ginverse.hpp"
#include "mrp/matrix.hpp"

namespace mrp {

/// Infinitesimal generator of a stable, regular continuous-time chain:
/// nonnegative off-diagonal rates, strictly negative diagonal, zero row
/// sums.
class Generator {
 public:
  std::size_t size() const { return q_.rows(); }
  const Matrix& q() const { return q_; }

  /// Exit rates nu_i = -q_ii.
  Vec exit_rates() const;

  friend Generator validate_generator(Matrix q, double tol);

 private:
  explicit Generator(Matrix q) : q_(std::move(q)) {}
  Matrix q_;
};

Generator validate_generator(Matrix q, double tol = 1e-9);

/// Embedded-jump-chain view of the generator: p_ij = q_ij / nu_i off the
/// diagonal and zero on it, with exponential sojourn moments
/// mu_ij = p_ij / nu_i. Satisfies I - P = (Q_d)^-1 Q.
MrpSpec mrp_from_generator(const Generator& gen);

/// H = [Q + e uᵀ]⁻¹, a one-condition g-inverse of Q.
GInverse generator_h(const Generator& gen, const Vec& u);

struct HProfile {
  Vec varpi;
  double lambda = 0.0;
  Vec pi;
  Matrix mfpt;
  bool ill_conditioned = false;
};

/// Stationary quantities and the MFPT matrix straight from the generator
/// through H = [Q + e uᵀ]⁻¹: varpiᵀ = uᵀH, lambda = -(varpiᵀ Q_d e)⁻¹,
/// piᵀ = -lambda varpiᵀ Q_d, M = [H - E H_d - (Q_d)⁻¹] diag(1/(uᵀH)_j).
HProfile ctmc_profile_H(const Generator& gen, const Vec& u);

/// First Kemeny function from the generator:
/// k1 = lambda [I - H Q_d + tr(H Q_d)] e.
Vec kemeny1_ctmc(const Generator& gen, const Vec& u);

/// Birth-death rates: alpha[i] is the up-rate out of state i+1, beta[i]
/// the down-rate out of state i+2 (both length m-1).
struct BirthDeathParams {
  Vec alpha;
  Vec beta;
};

/// Tridiagonal generator with the given birth/death rates.
Generator bd_generator(const BirthDeathParams& params);

struct Bd3Closed {
  Matrix mfpt;
  Vec pi;
  Vec varpi;
  Vec mu;
  double lambda = 0.0;
  double k2_circle_constant = 0.0;
};

/// Closed forms for the three-state birth-death process: all nine mean
/// first passage times, both stationary vectors, lambda, and the constant
/// value of the circle variant of the occupancy-mixed Kemeny function.
Bd3Closed bd3_closed(double a1, double a2, double b2, double b3);

}  // namespace mrp
