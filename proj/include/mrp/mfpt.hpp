#pragma once

#include "mrp/chain.hpp"
#include "mrp/ginverse.hpp"
#include "mrp/matrix.hpp"

namespace mrp {

/// Mean first passage time matrix; m(i,j) is the expected time to first
/// reach j from i, and the diagonal holds mean recurrence times.
struct MfptMatrix {
  Matrix m;

  std::size_t size() const { return m.rows(); }
};

/// Per-target-column linear solve of the first-passage equations. Uses
/// only the transition matrix, the sojourn means and a generic solver;
/// independent of all g-inverse machinery, which makes it the oracle the
/// closed-form routes are checked against.
MfptMatrix mfpt_direct(const MrpSpec& spec);

/// Closed form via any one-condition g-inverse of I - P. GeneratorH
/// inverses are folded through the embedded-chain equivalent first.
MfptMatrix mfpt_closed(const MrpSpec& spec, const GInverse& ginv);

/// Closed form via the parametric inverse built from t = mu; valid for
/// any u with uᵀe != 0, and independent of the choice of u.
MfptMatrix mfpt_gtilde(const MrpSpec& spec, const Vec& u);

/// Residual of the defining matrix equation
/// (I - P)M = mu eᵀ - P M_d, in the infinity norm.
double mfpt_residual(const MfptMatrix& mfpt, const MrpSpec& spec);

}  // namespace mrp
