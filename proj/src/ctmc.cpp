#include "mrp/ctmc.hpp"

#include <cmath>
#include <string>

#include "mrp/errors.hpp"

namespace mrp {

Vec Generator::exit_rates() const {
  Vec nu(size());
  for (std::size_t i = 0; i < size(); ++i) nu[i] = -q_(i, i);
  return nu;
}

Generator validate_generator(Matrix q, double tol) {
  if (!q.square() || q.rows() == 0)
    throw Error(ErrorCode::NotSquare, "generator must be square with m >= 1");
  const std::size_t m = q.rows();
  for (std::size_t i = 0; i < m; ++i) {
    if (q(i, i) >= -1e-13)
      throw Error(ErrorCode::ZeroDiagonal,
                  "state " + std::to_string(i + 1) + " has no exit rate");
    double off = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (q(i, j) < 0.0)
        throw Error(ErrorCode::NegativeEntry,
                    "q[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "] < 0");
      off += q(i, j);
    }
    const double sum = off + q(i, i);
    if (std::abs(sum) > tol * std::max(1.0, -q(i, i)))
      throw Error(ErrorCode::RowSumViolation,
                  "generator row " + std::to_string(i + 1) + " sums to " + std::to_string(sum));
    // repair within tolerance so rows sum to zero exactly, mirroring the
    // chain-side row renormalization
    if (off <= 1e-13)
      throw Error(ErrorCode::ZeroDiagonal,
                  "state " + std::to_string(i + 1) + " has no outgoing rates");
    q(i, i) = -off;
  }
  return Generator(std::move(q));
}

MrpSpec mrp_from_generator(const Generator& gen) {
  const std::size_t m = gen.size();
  const Matrix& q = gen.q();
  Matrix p(m, m);
  Matrix moments(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const double nu = -q(i, i);
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      p(i, j) = q(i, j) / nu;
      moments(i, j) = p(i, j) / nu;
    }
  }
  return MrpSpec::with_moments(validate_chain(std::move(p)), std::move(moments),
                               ChainKind::Ctmc);
}

GInverse generator_h(const Generator& gen, const Vec& u) {
  double ue = 0.0;
  for (double x : u) ue += x;
  if (std::abs(ue) < 1e-13) throw Error(ErrorCode::DegenerateU, "uᵀe is numerically zero");
  Matrix a = gen.q() + Matrix::outer(ones(gen.size()), u);
  LuDecomposition lu(a);
  return GInverse{lu.inverse(), GRoute::GeneratorH, ones(gen.size()), u, gen.q(),
                  lu.ill_conditioned()};
}

HProfile ctmc_profile_H(const Generator& gen, const Vec& u) {
  const std::size_t m = gen.size();
  const GInverse hinv = generator_h(gen, u);
  const Matrix& h = hinv.g;
  const Matrix& q = gen.q();

  HProfile out;
  out.ill_conditioned = hinv.ill_conditioned;
  out.varpi = h.left_multiply(u);

  double wqd = 0.0;
  for (std::size_t i = 0; i < m; ++i) wqd += out.varpi[i] * q(i, i);
  out.lambda = -1.0 / wqd;

  out.pi.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.pi[i] = -out.lambda * out.varpi[i] * q(i, i);

  // M = [H - E H_d - (Q_d)^-1] diag(1/(uᵀH)_j)
  out.mfpt = Matrix(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double dj = 1.0 / out.varpi[j];
    for (std::size_t i = 0; i < m; ++i) {
      double x = h(i, j) - h(j, j);
      if (i == j) x -= 1.0 / q(i, i);
      out.mfpt(i, j) = x * dj;
    }
  }
  return out;
}

Vec kemeny1_ctmc(const Generator& gen, const Vec& u) {
  const std::size_t m = gen.size();
  const HProfile prof = ctmc_profile_H(gen, u);
  const GInverse hinv = generator_h(gen, u);
  const Matrix& q = gen.q();

  // H Q_d e and tr(H Q_d); Q_d scales column j by q_jj.
  Vec hqde(m, 0.0);
  double tr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) hqde[i] += hinv.g(i, j) * q(j, j);
    tr += hinv.g(i, i) * q(i, i);
  }
  Vec k1(m);
  for (std::size_t i = 0; i < m; ++i) k1[i] = prof.lambda * (1.0 - hqde[i] + tr);
  return k1;
}

Generator bd_generator(const BirthDeathParams& params) {
  if (params.alpha.size() != params.beta.size() || params.alpha.empty())
    throw Error(ErrorCode::BadSpec, "alpha and beta must have equal length m-1 >= 1");
  for (double a : params.alpha)
    if (!(a > 0.0)) throw Error(ErrorCode::NonpositiveRate, "birth rates must be positive");
  for (double b : params.beta)
    if (!(b > 0.0)) throw Error(ErrorCode::NonpositiveRate, "death rates must be positive");

  const std::size_t m = params.alpha.size() + 1;
  Matrix q(m, m);
  for (std::size_t i = 0; i + 1 < m; ++i) q(i, i + 1) = params.alpha[i];
  for (std::size_t i = 1; i < m; ++i) q(i, i - 1) = params.beta[i - 1];
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) sum += q(i, j);
    q(i, i) = -sum;
  }
  return validate_generator(std::move(q));
}

Bd3Closed bd3_closed(double a1, double a2, double b2, double b3) {
  for (double r : {a1, a2, b2, b3})
    if (!(r > 0.0)) throw Error(ErrorCode::NonpositiveRate, "rates must be positive");
  const double rho = a2 / b2;

  Bd3Closed out;
  out.mfpt = Matrix(3, 3);
  out.mfpt(0, 0) = 1.0 / a1 + 1.0 / b2 + rho / b3;
  out.mfpt(0, 1) = 1.0 / a1;
  out.mfpt(0, 2) = 1.0 / a1 + 1.0 / a2 + 1.0 / (a1 * rho);
  out.mfpt(1, 0) = 1.0 / b2 + rho / b3;
  out.mfpt(1, 1) = (1.0 / a1 + 1.0 / b2 + rho / b3) / (1.0 + rho);
  out.mfpt(1, 2) = 1.0 / (rho * a1) + 1.0 / a2;
  out.mfpt(2, 0) = 1.0 / b2 + (1.0 + rho) / b3;
  out.mfpt(2, 1) = 1.0 / b3;
  out.mfpt(2, 2) = 1.0 / (rho * a1) + 1.0 / a2 + 1.0 / b3;

  out.pi = {1.0 / (2.0 * (1.0 + rho)), 0.5, rho / (2.0 * (1.0 + rho))};
  const double w1 = 1.0 / (1.0 + a1 / b2 + a1 * a2 / (b2 * b3));
  out.varpi = {w1, (a1 / b2) * w1, (a1 * a2 / (b2 * b3)) * w1};
  out.mu = {1.0 / a1, 1.0 / (a2 + b2), 1.0 / b3};
  out.lambda = (1.0 / a1 + 1.0 / b2 + a2 / (b2 * b3)) / (2.0 * (1.0 + rho));
  out.k2_circle_constant = (1.0 - out.varpi[0]) / a1 + (1.0 - out.varpi[2]) / b3;
  return out;
}

}  // namespace mrp
