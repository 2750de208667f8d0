#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace mrp {

using Vec = std::vector<double>;

Vec ones(std::size_t n);
double dot(const Vec& a, const Vec& b);
double norm_inf(const Vec& v);
double max_abs_diff(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& v, double s);

/// Dense row-major matrix of doubles. Small-m workhorse; no view types,
/// everything is a value.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vec& d);
  static Matrix outer(const Vec& a, const Vec& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  Matrix operator*(const Matrix& rhs) const;
  Vec operator*(const Vec& v) const;

  Matrix transpose() const;
  Vec diag() const;
  double trace() const;
  Vec row_sums() const;
  Vec left_multiply(const Vec& x) const;  // xᵀA, returned as a vector

  double norm_inf() const;  // induced: max absolute row sum
  double max_abs() const;   // entrywise

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);

double max_abs_diff(const Matrix& a, const Matrix& b);
/// max over entries of |a - b| / max(1, |a|, |b|)
double max_rel_diff(const Matrix& a, const Matrix& b);
double max_rel_diff(const Vec& a, const Vec& b);

Matrix matpow(const Matrix& base, unsigned long long n);

/// LU factorization with partial pivoting. Throws Error(Singular) when a
/// pivot falls below 1e-13 * ||A||_inf. Tracks the element growth factor;
/// callers surface growth() > kGrowthLimit as an ill-conditioning flag
/// rather than an error.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& a);

  Vec solve(Vec b) const;
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;

  double growth() const { return growth_; }
  bool ill_conditioned() const { return growth_ > kGrowthLimit; }

  static constexpr double kGrowthLimit = 1e12;
  static constexpr double kPivotFloor = 1e-13;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double growth_ = 1.0;
};

Matrix solve_dense(const Matrix& a, const Matrix& b);
Vec solve_dense(const Matrix& a, const Vec& b);

}  // namespace mrp
