#include <doctest.h>

#include "mrp/errors.hpp"
#include "mrp/matrix.hpp"
#include "mrp/rng.hpp"

using namespace mrp;

TEST_SUITE_BEGIN("matrix");

TEST_CASE("identity solve returns the right-hand side") {
  Matrix b{{1.0, 2.0}, {3.0, 4.0}};
  Matrix x = solve_dense(Matrix::identity(2), b);
  CHECK(max_abs_diff(x, b) == 0.0);
}

TEST_CASE("diagonal system inverts entrywise") {
  Matrix a{{2.0, 0.0}, {0.0, 4.0}};
  Matrix x = solve_dense(a, Matrix::identity(2));
  CHECK(x(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(x(1, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(x(0, 1) == 0.0);
  CHECK(x(1, 0) == 0.0);
}

TEST_CASE("rank-deficient matrix reports Singular") {
  Matrix a{{1.0, 1.0}, {1.0, 1.0}};
  CHECK_THROWS_WITH_AS(solve_dense(a, Matrix::identity(2)), doctest::Contains("pivot"), Error);
  try {
    solve_dense(a, Matrix::identity(2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Singular);
  }
}

TEST_CASE("residual stays small on random well-conditioned systems") {
  SplitMix64 rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rep % 12;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = 2.0 * rng.uniform() - 1.0;
      a(i, i) += static_cast<double>(n);  // diagonally dominant
    }
    Matrix b(n, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = 2.0 * rng.uniform() - 1.0;
    Matrix x = solve_dense(a, b);
    CHECK(max_abs_diff(a * x, b) <= 1e-9 * b.norm_inf());
  }
}

TEST_CASE("growth factor is benign for diagonally dominant input") {
  Matrix a{{4.0, 1.0}, {1.0, 4.0}};
  LuDecomposition lu(a);
  CHECK(lu.growth() < 10.0);
  CHECK_FALSE(lu.ill_conditioned());
}

TEST_CASE("pathological elimination growth raises the ill-conditioned flag") {
  // lower triangle of -1s with a ones column: element growth 2^(n-1)
  const std::size_t n = 50;
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) a(i, j) = -1.0;
    a(i, i) = 1.0;
    a(i, n - 1) = 1.0;
  }
  LuDecomposition lu(a);
  CHECK(lu.growth() > LuDecomposition::kGrowthLimit);
  CHECK(lu.ill_conditioned());
}

TEST_CASE("matrix power by binary exponentiation") {
  Matrix p{{0.0, 1.0}, {1.0, 0.0}};
  CHECK(max_abs_diff(matpow(p, 2), Matrix::identity(2)) == 0.0);
  CHECK(max_abs_diff(matpow(p, 10001), p) == 0.0);
}

TEST_CASE("pairwise helpers") {
  Vec v{1.0, -3.0, 2.0};
  CHECK(norm_inf(v) == 3.0);
  CHECK(dot(v, v) == doctest::Approx(14.0));
  Matrix m{{1.0, -5.0}, {0.5, 0.5}};
  CHECK(m.norm_inf() == 6.0);
  CHECK(m.max_abs() == 5.0);
  CHECK(m.trace() == doctest::Approx(1.5));
}

TEST_SUITE_END();
