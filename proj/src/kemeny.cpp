#include "mrp/kemeny.hpp"

#include <algorithm>
#include <cmath>

#include "mrp/errors.hpp"

namespace mrp {

namespace {

KemenyVector classify(Vec v, double tol) {
  KemenyVector out;
  const Constancy c = constancy_test(v, tol);
  out.spread = c.spread;
  if (c.constant) {
    double mean = 0.0;
    for (double x : v) mean += x;
    out.constant = mean / static_cast<double>(v.size());
  }
  out.values = std::move(v);
  return out;
}

Vec add_scaled_e(Vec v, double c) {
  for (double& x : v) x += c;
  return v;
}

struct ClosedContext {
  const Matrix* g;
  Vec gmu;        // G mu
  Vec ge;         // G e
  double tr;      // tr(G)
  double pi_gmu;  // piᵀ G mu = tr(G mu piᵀ)
  double diag_mu; // eᵀ G_d mu
  double mix;     // eᵀ (G mu piᵀ)_d mu = sum_j (G mu)_j pi_j mu_j
};

ClosedContext make_context(const Matrix& g, const StationaryProfile& prof) {
  ClosedContext ctx;
  ctx.g = &g;
  ctx.gmu = g * prof.mu;
  ctx.ge = g * ones(g.rows());
  ctx.tr = g.trace();
  ctx.pi_gmu = dot(prof.pi, ctx.gmu);
  ctx.diag_mu = 0.0;
  ctx.mix = 0.0;
  for (std::size_t j = 0; j < g.rows(); ++j) {
    ctx.diag_mu += g(j, j) * prof.mu[j];
    ctx.mix += ctx.gmu[j] * prof.pi[j] * prof.mu[j];
  }
  return ctx;
}

// Generic-G forms, valid for any one-condition g-inverse of I - P.
Vec closed_generic(const ClosedContext& ctx, const StationaryProfile& prof, KemenyDef which) {
  const std::size_t m = ctx.gmu.size();
  const double lambda = prof.lambda;
  switch (which) {
    case KemenyDef::K1: {
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i)
        v[i] = ctx.gmu[i] - ctx.pi_gmu + lambda - lambda * ctx.ge[i] + lambda * ctx.tr;
      return v;
    }
    case KemenyDef::K1Circle: {
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i)
        v[i] = ctx.gmu[i] - ctx.pi_gmu - lambda * ctx.ge[i] + lambda * ctx.tr;
      return v;
    }
    case KemenyDef::K2: {
      const double c = ctx.diag_mu - ctx.mix / lambda;
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = prof.mu[i] + c;
      return v;
    }
    case KemenyDef::K2Circle:
      return Vec(m, ctx.diag_mu - ctx.mix / lambda);
    case KemenyDef::K3: {
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i)
        v[i] = (ctx.gmu[i] - ctx.pi_gmu) / lambda + 1.0 - ctx.ge[i] + ctx.tr;
      return v;
    }
    case KemenyDef::K3Circle: {
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i)
        v[i] = (ctx.gmu[i] - ctx.pi_gmu) / lambda - ctx.ge[i] + ctx.tr;
      return v;
    }
  }
  throw Error(ErrorCode::BadSpec, "unknown Kemeny definition");
}

// Simplified forms for the parametric route with t proportional to mu,
// where G mu = f e collapses the mixing terms.
Vec closed_gtilde(const ClosedContext& ctx, const StationaryProfile& prof, double f,
                  KemenyDef which) {
  const std::size_t m = ctx.gmu.size();
  const double lambda = prof.lambda;
  switch (which) {
    case KemenyDef::K1: {
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = lambda * (1.0 - ctx.ge[i] + ctx.tr);
      return v;
    }
    case KemenyDef::K1Circle: {
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = lambda * (ctx.tr - ctx.ge[i]);
      return v;
    }
    case KemenyDef::K2: {
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = prof.mu[i] - f + ctx.diag_mu;
      return v;
    }
    case KemenyDef::K2Circle:
      return Vec(m, ctx.diag_mu - f);
    case KemenyDef::K3: {
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = 1.0 - ctx.ge[i] + ctx.tr;
      return v;
    }
    case KemenyDef::K3Circle: {
      Vec v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = ctx.tr - ctx.ge[i];
      return v;
    }
  }
  throw Error(ErrorCode::BadSpec, "unknown Kemeny definition");
}

bool proportional_to(const Vec& t, const Vec& mu, double* factor) {
  const double c = t[0] / mu[0];
  double dev = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    dev = std::max(dev, std::abs(t[i] - c * mu[i]));
    scale = std::max(scale, std::abs(t[i]));
  }
  if (dev > 1e-12 * scale) return false;
  *factor = c;
  return true;
}

}  // namespace

Constancy constancy_test(const Vec& v, double tol) {
  if (v.empty()) return {true, 0.0};
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double spread = *hi - *lo;
  return {spread <= tol * std::max(1.0, norm_inf(v)), spread};
}

KemenyReport kemeny_from_mfpt(const MfptMatrix& mfpt, const StationaryProfile& profile,
                              double tol) {
  const std::size_t m = mfpt.size();
  Vec k1(m, 0.0), k2(m, 0.0), k3(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double mij = mfpt.m(i, j);
      k1[i] += mij * profile.pi[j];
      k2[i] += mij * profile.varpi[j];
      k3[i] += mij / mfpt.m(j, j);
    }
  }
  KemenyReport rep;
  rep.k1_circle = classify(add_scaled_e(k1, -profile.lambda), tol);
  Vec k2c(m);
  for (std::size_t i = 0; i < m; ++i) k2c[i] = k2[i] - profile.mu[i];
  rep.k2_circle = classify(std::move(k2c), tol);
  rep.k3_circle = classify(add_scaled_e(k3, -1.0), tol);
  rep.k1 = classify(std::move(k1), tol);
  rep.k2 = classify(std::move(k2), tol);
  rep.k3 = classify(std::move(k3), tol);
  rep.mu_deviation = 0.0;
  for (double mi : profile.mu)
    rep.mu_deviation = std::max(rep.mu_deviation, std::abs(mi - profile.lambda));
  rep.mu_constant = rep.mu_deviation <= tol * std::max(1.0, norm_inf(profile.mu));
  return rep;
}

namespace {

// The inverse must g-invert this spec's I - P (for GeneratorH, the stored
// generator must embed to this chain).
void check_same_chain(const MrpSpec& spec, const GInverse& ginv) {
  const std::size_t m = spec.size();
  if (ginv.g.rows() != m || ginv.target.rows() != m)
    throw Error(ErrorCode::RouteMismatch, "inverse built for a different state count");
  const Matrix& p = spec.chain().p();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double imp = (i == j ? 1.0 : 0.0) - p(i, j);
      const double stored = ginv.route == GRoute::GeneratorH
                                ? ginv.target(i, j) / ginv.target(i, i)
                                : ginv.target(i, j);
      worst = std::max(worst, std::abs(imp - stored));
    }
  }
  if (worst > 1e-9) throw Error(ErrorCode::RouteMismatch, "inverse built for a different chain");
}

}  // namespace

Vec kemeny_closed(const MrpSpec& spec, const GInverse& ginv, KemenyDef which) {
  const StationaryProfile prof = stationary_profile(spec);
  const std::size_t m = spec.size();
  check_same_chain(spec, ginv);

  switch (ginv.route) {
    case GRoute::Fundamental:
    case GRoute::Group:
      // Ze = e and A#e = 0 hold by construction, so the generic forms
      // already coincide with the simplified ones.
      return closed_generic(make_context(ginv.g, prof), prof, which);
    case GRoute::Parametric: {
      double c = 0.0;
      if (proportional_to(ginv.t, prof.mu, &c)) {
        double ue = 0.0;
        for (double x : ginv.u) ue += x;
        const double f = 1.0 / (c * ue);
        return closed_gtilde(make_context(ginv.g, prof), prof, f, which);
      }
      return closed_generic(make_context(ginv.g, prof), prof, which);
    }
    case GRoute::GeneratorH: {
      const Matrix& q = ginv.target;
      // Embedded-chain equivalent G = H Q_d, a parametric inverse with
      // t = (Q_d)^-1 e = -mu, hence G mu = -(1/uᵀe) e.
      Matrix g = ginv.g;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(i, j) *= q(j, j);
      double ue = 0.0;
      for (double x : ginv.u) ue += x;
      const double f = -1.0 / ue;
      return closed_gtilde(make_context(g, prof), prof, f, which);
    }
  }
  throw Error(ErrorCode::BadSpec, "unknown g-inverse route");
}

DtmcConstant kemeny_constant_dtmc(const StochasticMatrix& chain, DtmcConstantRoute route) {
  DtmcConstant out;
  if (route == DtmcConstantRoute::Trace) {
    const Vec pi = stationary_embedded(chain);
    out.value = fundamental_matrix(chain, pi).g.trace();
    return out;
  }
  const auto eig = eigen_spectrum(chain);
  // Perron root first after sorting; sum 1/(1 - lambda_j) over the rest.
  std::complex<double> sum = 0.0;
  for (std::size_t j = 1; j < eig.size(); ++j) sum += 1.0 / (1.0 - eig[j]);
  out.value = 1.0 + sum.real();
  out.imag_residue = std::abs(sum.imag());
  out.flagged = out.imag_residue > 1e-8;
  return out;
}

ConstancyVerdict constancy_equivalence(const MrpSpec& spec, double tol) {
  const StationaryProfile prof = stationary_profile(spec);
  const MfptMatrix mfpt = mfpt_direct(spec);
  const KemenyReport rep = kemeny_from_mfpt(mfpt, prof, tol);

  ConstancyVerdict v;
  // (I - P)k1 = mu - lambda e, an identity that holds constant or not.
  const Matrix& p = spec.chain().p();
  const std::size_t m = spec.size();
  double resid = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = rep.k1.values[i];
    for (std::size_t k = 0; k < m; ++k) s -= p(i, k) * rep.k1.values[k];
    resid = std::max(resid, std::abs(s - (prof.mu[i] - prof.lambda)));
  }
  v.identity_residual = resid;
  v.mu_deviation = rep.mu_deviation;
  v.mu_constant = rep.mu_constant;
  v.k1_constant = rep.k1.constant.has_value();
  v.k2_constant = rep.k2.constant.has_value();
  v.k3_constant = rep.k3.constant.has_value();
  v.equivalence_holds = (v.k1_constant == v.mu_constant) && (v.k2_constant == v.mu_constant) &&
                        (v.k3_constant == v.mu_constant);
  return v;
}

}  // namespace mrp
