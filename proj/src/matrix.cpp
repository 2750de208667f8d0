#include "mrp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mrp/errors.hpp"

namespace mrp {

Vec ones(std::size_t n) { return Vec(n, 1.0); }

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_inf(const Vec& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double max_abs_diff(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scaled(const Vec& v, double s) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * s;
  return r;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::NotSquare, "ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vec& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::outer(const Vec& a, const Vec& b) {
  Matrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Vec Matrix::operator*(const Vec& v) const {
  Vec out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Vec Matrix::diag() const {
  Vec d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i);
  return d;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Vec Matrix::row_sums() const {
  Vec s(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
  return s;
}

Vec Matrix::left_multiply(const Vec& x) const {
  Vec out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t j = 0; j < cols_; ++j) out[j] += xi * (*this)(i, j);
  }
  return out;
}

double Matrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (double x : data_) best = std::max(best, std::abs(x));
  return best;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(double s, Matrix m) { return m *= s; }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      best = std::max(best, std::abs(a(i, j) - b(i, j)));
  return best;
}

double max_rel_diff(const Matrix& a, const Matrix& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double x = a(i, j), y = b(i, j);
      const double denom = std::max({1.0, std::abs(x), std::abs(y)});
      best = std::max(best, std::abs(x - y) / denom);
    }
  return best;
}

double max_rel_diff(const Vec& a, const Vec& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    best = std::max(best, std::abs(a[i] - b[i]) / denom);
  }
  return best;
}

Matrix matpow(const Matrix& base, unsigned long long n) {
  Matrix result = Matrix::identity(base.rows());
  Matrix square = base;
  while (n > 0) {
    if (n & 1ULL) result = result * square;
    n >>= 1ULL;
    if (n > 0) square = square * square;
  }
  return result;
}

LuDecomposition::LuDecomposition(const Matrix& a) : lu_(a), perm_(a.rows()) {
  if (!a.square()) throw Error(ErrorCode::NotSquare, "LU requires a square matrix");
  const std::size_t n = lu_.rows();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  const double scale = a.norm_inf();
  const double floor = kPivotFloor * (scale > 0.0 ? scale : 1.0);
  const double initial_max = a.max_abs();
  double peak = initial_max;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu_(i, k));
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best < floor) throw Error(ErrorCode::Singular, "pivot below threshold");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(pivot, j));
      std::swap(perm_[k], perm_[pivot]);
    }
    const double d = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu_(i, k) / d;
      lu_(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) {
        lu_(i, j) -= f * lu_(k, j);
        peak = std::max(peak, std::abs(lu_(i, j)));
      }
    }
  }
  growth_ = initial_max > 0.0 ? peak / initial_max : 1.0;
}

Vec LuDecomposition::solve(Vec b) const {
  const std::size_t n = lu_.rows();
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 1; i < n; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x[j];
    x[ii] = s / lu_(ii, ii);
  }
  return x;
}

Matrix LuDecomposition::solve(const Matrix& b) const {
  const std::size_t n = lu_.rows();
  Matrix x(n, b.cols());
  Vec col(n);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    Vec sol = solve(col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

Matrix LuDecomposition::inverse() const { return solve(Matrix::identity(lu_.rows())); }

Matrix solve_dense(const Matrix& a, const Matrix& b) { return LuDecomposition(a).solve(b); }

Vec solve_dense(const Matrix& a, const Vec& b) { return LuDecomposition(a).solve(b); }

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::RowSumViolation: return "RowSumViolation";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DegenerateU: return "DegenerateU";
    case ErrorCode::NonpositiveSojourn: return "NonpositiveSojourn";
    case ErrorCode::MomentOffSupport: return "MomentOffSupport";
    case ErrorCode::NonpositiveRate: return "NonpositiveRate";
    case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::RouteMismatch: return "RouteMismatch";
    case ErrorCode::BadSpec: return "BadSpec";
  }
  return "Unknown";
}

}  // namespace mrp
