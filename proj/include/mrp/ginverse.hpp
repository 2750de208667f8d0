#pragma once

#include <complex>
#include <vector>

#include "mrp/chain.hpp"
#include "mrp/matrix.hpp"

namespace mrp {

enum class GRoute { Fundamental, Group, Parametric, GeneratorH };

const char* to_string(GRoute route);

/// A one-condition generalized inverse of I - P (or of the generator Q
/// for the GeneratorH route), together with how it was built. `target`
/// is the matrix W the defining relation W·G·W = W refers to.
struct GInverse {
  Matrix g;
  GRoute route;
  Vec t;  // Parametric: G = [I - P + t uᵀ]⁻¹; GeneratorH: t = -mu implicitly
  Vec u;
  Matrix target;
  bool ill_conditioned = false;
};

/// Fundamental matrix Z = [I - P + e piᵀ]⁻¹. Satisfies Ze = e and
/// piᵀZ = piᵀ.
GInverse fundamental_matrix(const StochasticMatrix& chain, const Vec& pi);

/// Group inverse A# = Z - e piᵀ (the deviation matrix). Satisfies
/// A#e = 0 and piᵀA# = 0ᵀ.
GInverse group_inverse(const StochasticMatrix& chain, const Vec& pi);

/// Parametric inverse [I - P + t uᵀ]⁻¹, nonsingular when uᵀe != 0 and
/// piᵀt != 0. Throws DegenerateU when |uᵀe| < 1e-13.
GInverse parametric_ginverse(const StochasticMatrix& chain, const Vec& t, const Vec& u);

/// Residual of the one-condition property: ||W·G·W - W||_inf with
/// W = I - P (W = Q for GeneratorH inverses).
double verify_ginverse(const GInverse& ginv, const StochasticMatrix& chain);

/// All m eigenvalues of P, sorted by descending real part (ties by
/// descending imaginary part). Householder reduction to Hessenberg form
/// followed by Francis double-shift QR; throws NoConvergence after
/// 500*m iterations.
std::vector<std::complex<double>> eigen_spectrum(const StochasticMatrix& chain);

}  // namespace mrp
