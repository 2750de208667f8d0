#include "mrp/mfpt.hpp"

#include <cmath>

#include "mrp/errors.hpp"

namespace mrp {

namespace {

// m_ij = ((G mu)_i - (G mu)_j) + (delta_ij - g_ij + g_jj) * lambda / pi_j.
// Entrywise expansion of the g-inverse closed form with D = lambda (Pi_d)^-1.
MfptMatrix assemble_from_ginverse(const Matrix& g, const StationaryProfile& prof) {
  const std::size_t m = g.rows();
  const Vec gmu = g * prof.mu;
  Matrix out(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double dj = prof.lambda / prof.pi[j];
    const double gjj = g(j, j);
    for (std::size_t i = 0; i < m; ++i) {
      const double delta = i == j ? 1.0 : 0.0;
      out(i, j) = (gmu[i] - gmu[j]) + (delta - g(i, j) + gjj) * dj;
    }
  }
  return MfptMatrix{std::move(out)};
}

}  // namespace

MfptMatrix mfpt_direct(const MrpSpec& spec) {
  const std::size_t m = spec.size();
  const Matrix& p = spec.chain().p();
  const Vec& mu = spec.mean_sojourn();
  Matrix out(m, m);
  for (std::size_t target = 0; target < m; ++target) {
    // Unknowns: m_ij for i != target. System rows: m_ij - sum_{k != target}
    // p_ik m_kj = mu_i.
    const std::size_t n = m - 1;
    Matrix a(n, n);
    Vec b(n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == target) continue;
      std::size_t c = 0;
      for (std::size_t k = 0; k < m; ++k) {
        if (k == target) continue;
        a(r, c) = (i == k ? 1.0 : 0.0) - p(i, k);
        ++c;
      }
      b[r] = mu[i];
      ++r;
    }
    Vec x = n > 0 ? solve_dense(a, b) : Vec{};
    std::size_t idx = 0;
    double recurrence = mu[target];
    for (std::size_t k = 0; k < m; ++k) {
      if (k == target) continue;
      out(k, target) = x[idx];
      recurrence += p(target, k) * x[idx];
      ++idx;
    }
    out(target, target) = recurrence;
  }
  return MfptMatrix{std::move(out)};
}

MfptMatrix mfpt_closed(const MrpSpec& spec, const GInverse& ginv) {
  const StationaryProfile prof = stationary_profile(spec);
  if (ginv.route == GRoute::GeneratorH) {
    // H g-inverts Q; the embedded-chain equivalent is H Q_d.
    const Matrix& q = ginv.target;
    if (q.rows() != spec.size())
      throw Error(ErrorCode::RouteMismatch, "inverse built for a different chain");
    Matrix g = ginv.g;
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= q(j, j);
    return assemble_from_ginverse(g, prof);
  }
  if (ginv.g.rows() != spec.size())
    throw Error(ErrorCode::RouteMismatch, "inverse built for a different chain");
  return assemble_from_ginverse(ginv.g, prof);
}

MfptMatrix mfpt_gtilde(const MrpSpec& spec, const Vec& u) {
  const StationaryProfile prof = stationary_profile(spec);
  const GInverse gt = parametric_ginverse(spec.chain(), prof.mu, u);
  // M = [I - G + E G_d] D with D = lambda (Pi_d)^-1; the first-passage
  // mixing terms vanish because G mu is a multiple of e.
  const std::size_t m = spec.size();
  Matrix out(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double dj = prof.lambda / prof.pi[j];
    const double gjj = gt.g(j, j);
    for (std::size_t i = 0; i < m; ++i) {
      const double delta = i == j ? 1.0 : 0.0;
      out(i, j) = (delta - gt.g(i, j) + gjj) * dj;
    }
  }
  return MfptMatrix{std::move(out)};
}

double mfpt_residual(const MfptMatrix& mfpt, const MrpSpec& spec) {
  const std::size_t m = spec.size();
  const Matrix& p = spec.chain().p();
  const Vec& mu = spec.mean_sojourn();
  // (I - P)M - mu eᵀ + P M_d  (mu eᵀ equals P1 E whenever moments are
  // consistent, since P1 e = mu).
  Matrix resid(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = mfpt.m(i, j) - mu[i];
      for (std::size_t k = 0; k < m; ++k) {
        s -= p(i, k) * mfpt.m(k, j);
        if (k == j) s += p(i, k) * mfpt.m(j, j);
      }
      resid(i, j) = s;
    }
  }
  return resid.norm_inf();
}

}  // namespace mrp
