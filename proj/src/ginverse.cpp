#include "mrp/ginverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrp/errors.hpp"

namespace mrp {

namespace {

Matrix identity_minus(const Matrix& p) {
  Matrix w(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) w(i, j) = (i == j ? 1.0 : 0.0) - p(i, j);
  return w;
}

// Householder similarity reduction to upper Hessenberg form, in place.
void hessenberg_reduce(Matrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  Vec w(n, 0.0);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale = std::max(scale, std::abs(h(i, k)));
    if (scale == 0.0) continue;
    double sigma = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      w[i] = h(i, k) / scale;
      sigma += w[i] * w[i];
    }
    const double alpha = w[k + 1] >= 0.0 ? -std::sqrt(sigma) : std::sqrt(sigma);
    w[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += w[i] * w[i];
    if (vnorm2 == 0.0) continue;
    // rows: H <- (I - 2wwᵀ/wᵀw) H
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += w[i] * h(i, j);
      s = 2.0 * s / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * w[i];
    }
    // columns: H <- H (I - 2wwᵀ/wᵀw)
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * w[j];
      s = 2.0 * s / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * w[j];
    }
    h(k + 1, k) = alpha * scale;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    std::fill(w.begin(), w.end(), 0.0);
  }
}

// Eigenvalues of an upper Hessenberg matrix by the Francis double-shift
// QR iteration with deflation; exceptional shifts every 10 sweeps on a
// stuck block. Classic EISPACK organization.
std::vector<std::complex<double>> hqr_eigenvalues(Matrix& hm, std::size_t iter_cap) {
  const int n = static_cast<int>(hm.rows());
  std::vector<std::complex<double>> eig;
  eig.reserve(n);
  auto h = [&hm](int i, int j) -> double& {
    return hm(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));

  const double eps = std::numeric_limits<double>::epsilon();
  std::size_t total_its = 0;
  double t = 0.0;
  int nn = n - 1;
  while (nn >= 0) {
    int its = 0;
    for (;;) {
      int l = nn;
      while (l >= 1) {
        double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(h(l, l - 1)) <= eps * s) {
          h(l, l - 1) = 0.0;
          break;
        }
        --l;
      }
      double x = h(nn, nn);
      if (l == nn) {
        eig.emplace_back(x + t, 0.0);
        --nn;
        break;
      }
      double y = h(nn - 1, nn - 1);
      double w = h(nn, nn - 1) * h(nn - 1, nn);
      if (l == nn - 1) {
        const double p = 0.5 * (y - x);
        const double q = p * p + w;
        double z = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          z = p + std::copysign(z, p);
          eig.emplace_back(x + z, 0.0);
          eig.emplace_back(z != 0.0 ? x - w / z : x + z, 0.0);
        } else {
          eig.emplace_back(x + p, z);
          eig.emplace_back(x + p, -z);
        }
        nn -= 2;
        break;
      }
      if (total_its >= iter_cap)
        throw Error(ErrorCode::NoConvergence, "eigenvalue iteration cap exceeded");
      if (its != 0 && its % 10 == 0) {
        t += x;
        for (int i = 0; i <= nn; ++i) h(i, i) -= x;
        const double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }
      ++its;
      ++total_its;

      double p = 0.0, q = 0.0, r = 0.0;
      int m = nn - 2;
      while (m >= l) {
        const double z = h(m, m);
        const double rr = x - z;
        const double ss = y - z;
        p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - rr - ss;
        r = h(m + 2, m + 1);
        const double s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v =
            std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
        if (u <= eps * v) break;
        --m;
      }
      for (int i = m + 2; i <= nn; ++i) {
        h(i, i - 2) = 0.0;
        if (i != m + 2) h(i, i - 3) = 0.0;
      }
      for (int k = m; k <= nn - 1; ++k) {
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = k != nn - 1 ? h(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0.0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) h(k, k - 1) = -h(k, k - 1);
        } else {
          h(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        const double z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          double pp = h(k, j) + q * h(k + 1, j);
          if (k != nn - 1) {
            pp += r * h(k + 2, j);
            h(k + 2, j) -= pp * z;
          }
          h(k + 1, j) -= pp * y;
          h(k, j) -= pp * x;
        }
        const int mmin = nn < k + 3 ? nn : k + 3;
        for (int i = l; i <= mmin; ++i) {
          double pp = x * h(i, k) + y * h(i, k + 1);
          if (k != nn - 1) {
            pp += z * h(i, k + 2);
            h(i, k + 2) -= pp * r;
          }
          h(i, k + 1) -= pp * q;
          h(i, k) -= pp;
        }
      }
    }
  }
  return eig;
}

}  // namespace

const char* to_string(GRoute route) {
  switch (route) {
    case GRoute::Fundamental: return "fundamental";
    case GRoute::Group: return "group";
    case GRoute::Parametric: return "parametric";
    case GRoute::GeneratorH: return "generator-h";
  }
  return "?";
}

GInverse fundamental_matrix(const StochasticMatrix& chain, const Vec& pi) {
  Matrix w = identity_minus(chain.p());
  Matrix a = w + Matrix::outer(ones(chain.size()), pi);
  LuDecomposition lu(a);
  return GInverse{lu.inverse(), GRoute::Fundamental, {}, {}, std::move(w), lu.ill_conditioned()};
}

GInverse group_inverse(const StochasticMatrix& chain, const Vec& pi) {
  GInverse z = fundamental_matrix(chain, pi);
  z.g -= Matrix::outer(ones(chain.size()), pi);
  z.route = GRoute::Group;
  return z;
}

GInverse parametric_ginverse(const StochasticMatrix& chain, const Vec& t, const Vec& u) {
  double ue = 0.0;
  for (double x : u) ue += x;
  if (std::abs(ue) < 1e-13) throw Error(ErrorCode::DegenerateU, "uᵀe is numerically zero");
  Matrix w = identity_minus(chain.p());
  Matrix a = w + Matrix::outer(t, u);
  LuDecomposition lu(a);
  return GInverse{lu.inverse(), GRoute::Parametric, t, u, std::move(w), lu.ill_conditioned()};
}

double verify_ginverse(const GInverse& ginv, const StochasticMatrix& chain) {
  const Matrix& w = ginv.target;
  if (w.rows() != chain.size() && ginv.route != GRoute::GeneratorH)
    throw Error(ErrorCode::RouteMismatch, "inverse built for a different state count");
  Matrix resid = w * ginv.g * w - w;
  return resid.norm_inf();
}

std::vector<std::complex<double>> eigen_spectrum(const StochasticMatrix& chain) {
  Matrix h = chain.p();
  hessenberg_reduce(h);
  auto eig = hqr_eigenvalues(h, 500 * chain.size());
  std::sort(eig.begin(), eig.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return eig;
}

}  // namespace mrp
