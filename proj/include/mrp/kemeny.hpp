#pragma once

#include <optional>

#include "mrp/chain.hpp"
#include "mrp/ginverse.hpp"
#include "mrp/mfpt.hpp"

namespace mrp {

struct Constancy {
  bool constant = false;
  double spread = 0.0;
};

/// True iff max(v) - min(v) <= tol * max(1, ||v||_inf); also returns the
/// spread.
Constancy constancy_test(const Vec& v, double tol);

struct KemenyVector {
  Vec values;
  double spread = 0.0;
  std::optional<double> constant;  // mean of entries, present when constant
};

/// The three Kemeny functions and their circle variants (return-time term
/// omitted): k1 mixes MFPTs with the embedded stationary vector, k2 with
/// the occupancy vector, k3 with reciprocal recurrence times. k2_circle
/// is a constant vector for every valid MRP.
struct KemenyReport {
  KemenyVector k1, k2, k3;
  KemenyVector k1_circle, k2_circle, k3_circle;
  bool mu_constant = false;
  double mu_deviation = 0.0;  // max_i |mu_i - lambda|
};

constexpr double kConstancyTol = 1e-8;

/// Definition-level mixing: k1 = M pi, k2 = M varpi, k3 = M (M_d)^-1 e,
/// circle variants by subtracting lambda e, mu, e respectively.
KemenyReport kemeny_from_mfpt(const MfptMatrix& mfpt, const StationaryProfile& profile,
                              double tol = kConstancyTol);

enum class KemenyDef { K1, K2, K3, K1Circle, K2Circle, K3Circle };

/// Closed-form evaluation through a g-inverse. The route tag selects the
/// simplified forms when their side conditions hold by construction
/// (Ze = e, A#e = 0, G~mu proportional to e); parametric inverses whose
/// t is not a multiple of mu go through the generic-G form.
Vec kemeny_closed(const MrpSpec& spec, const GInverse& ginv, KemenyDef which);

enum class DtmcConstantRoute { Trace, Eigen };

struct DtmcConstant {
  double value = 0.0;
  double imag_residue = 0.0;  // eigen route only
  bool flagged = false;       // imag_residue above 1e-8
};

/// Kemeny's constant of a discrete-time chain, either as tr(Z) or as
/// 1 + sum over subdominant eigenvalues of 1/(1 - lambda_j).
DtmcConstant kemeny_constant_dtmc(const StochasticMatrix& chain, DtmcConstantRoute route);

struct ConstancyVerdict {
  double identity_residual = 0.0;  // ||(I - P)k1 - (mu - lambda e)||_inf
  double mu_deviation = 0.0;
  bool mu_constant = false;
  bool k1_constant = false;
  bool k2_constant = false;
  bool k3_constant = false;
  bool equivalence_holds = false;  // mu_constant iff each of the three
};

/// Checks the constancy equivalence: the three Kemeny functions are
/// constant exactly when the mean sojourn times are.
ConstancyVerdict constancy_equivalence(const MrpSpec& spec, double tol = kConstancyTol);

}  // namespace mrp
