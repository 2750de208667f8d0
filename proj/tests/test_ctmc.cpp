#include <doctest.h>

#include "mrp/ctmc.hpp"
#include "mrp/kemeny.hpp"
#include "mrp/mfpt.hpp"
#include "support.hpp"

using namespace mrp;
using namespace testsupport;

TEST_SUITE_BEGIN("ctmc");

TEST_CASE("generator validation taxonomy") {
  CHECK_THROWS_AS(validate_generator(Matrix(2, 3)), Error);
  try {
    validate_generator(Matrix{{0.0, 0.0}, {2.0, -2.0}});
    FAIL("expected ZeroDiagonal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroDiagonal);
  }
  try {
    validate_generator(Matrix{{-1.0, 1.0}, {-2.0, 2.0}});
    FAIL("expected NegativeEntry or ZeroDiagonal");
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::NegativeEntry || e.code() == ErrorCode::ZeroDiagonal));
  }
  try {
    validate_generator(Matrix{{-1.0, 2.0}, {2.0, -2.0}});
    FAIL("expected RowSumViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RowSumViolation);
  }
}

TEST_CASE("near-zero row sums are repaired to exact ones") {
  // row sums off by less than the tolerance; the embedded chain must
  // still validate at its own tighter tolerance
  Generator gen = validate_generator(Matrix{{-0.1000000001, 0.1}, {2.0, -2.0}}, 1e-8);
  Vec sums = gen.q().row_sums();
  CHECK(sums[0] == 0.0);
  CHECK(sums[1] == 0.0);
  MrpSpec spec = mrp_from_generator(gen);
  CHECK(spec.mean_sojourn()[0] == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("embedded chain of the two-state generator") {
  MrpSpec spec = mrp_from_generator(ctmc2_gen());
  CHECK(spec.kind() == ChainKind::Ctmc);
  CHECK(spec.chain().p()(0, 1) == doctest::Approx(1.0));
  CHECK(spec.chain().p()(1, 0) == doctest::Approx(1.0));
  CHECK(spec.mean_sojourn()[0] == doctest::Approx(1.0));
  CHECK(spec.mean_sojourn()[1] == doctest::Approx(0.5));
}

TEST_CASE("embedded chain of the three-state birth-death generator") {
  MrpSpec spec = mrp_from_generator(bd3_gen());
  const Matrix& p = spec.chain().p();
  CHECK(p(0, 1) == doctest::Approx(1.0));
  CHECK(p(1, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(p(1, 2) == doctest::Approx(2.0 / 3.0));
  CHECK(p(2, 1) == doctest::Approx(1.0));
  CHECK(p(0, 0) == 0.0);
}

TEST_CASE("embedding round trip holds for random generators") {
  SplitMix64 rng(37);
  for (int rep = 0; rep < 100; ++rep) {
    Generator gen = random_generator(2 + rep % 11, rng);
    MrpSpec spec = mrp_from_generator(gen);
    const std::size_t m = gen.size();
    // I - P = (Q_d)^-1 Q entrywise
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double lhs = (i == j ? 1.0 : 0.0) - spec.chain().p()(i, j);
        const double rhs = gen.q()(i, j) / gen.q()(i, i);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    CHECK(worst <= 1e-12);
    // Lambda = -(Q_d)^-1
    for (std::size_t i = 0; i < m; ++i)
      CHECK(std::abs(spec.mean_sojourn()[i] + 1.0 / gen.q()(i, i)) <= 1e-12);
  }
}

TEST_CASE("H-route profile on the two-state generator") {
  HProfile hp = ctmc_profile_H(ctmc2_gen(), ones(2));
  CHECK(hp.varpi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(hp.varpi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(hp.pi[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(hp.pi[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(hp.lambda == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(hp.mfpt(0, 0) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(hp.mfpt(0, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(hp.mfpt(1, 0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(hp.mfpt(1, 1) == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("H-route output does not depend on u") {
  Generator gen = ctmc2_gen();
  HProfile a = ctmc_profile_H(gen, ones(2));
  HProfile b = ctmc_profile_H(gen, {1.0, 2.0});
  CHECK(max_abs_diff(a.varpi, b.varpi) <= 1e-12);
  CHECK(max_abs_diff(a.pi, b.pi) <= 1e-12);
  CHECK(std::abs(a.lambda - b.lambda) <= 1e-12);
  CHECK(max_abs_diff(a.mfpt, b.mfpt) <= 1e-12);
}

TEST_CASE("H-route stationarity and agreement over random generators") {
  SplitMix64 rng(41);
  for (int rep = 0; rep < 1000; ++rep) {
    Generator gen = random_generator(2 + rep % 11, rng);
    HProfile hp = ctmc_profile_H(gen, ones(gen.size()));
    CHECK(norm_inf(gen.q().left_multiply(hp.varpi)) <= 1e-10);

    MrpSpec spec = mrp_from_generator(gen);
    Matrix direct = mfpt_direct(spec).m;
    CHECK(max_rel_diff(hp.mfpt, direct) <= 1e-8);

    // both stationarity conditions hold simultaneously
    StationaryProfile prof = stationary_profile(spec);
    Vec r(gen.size(), 0.0);
    const Matrix& p = spec.chain().p();
    for (std::size_t j = 0; j < gen.size(); ++j) {
      double s = prof.pi[j];
      for (std::size_t i = 0; i < gen.size(); ++i) s -= prof.pi[i] * p(i, j);
      r[j] = s;
    }
    CHECK(norm_inf(r) <= 1e-10);
  }
}

TEST_CASE("generator Kemeny route on the two-state example") {
  Vec k1 = kemeny1_ctmc(ctmc2_gen(), ones(2));
  CHECK(k1[0] == doctest::Approx(1.25).epsilon(1e-13));
  CHECK(k1[1] == doctest::Approx(1.0).epsilon(1e-13));

  // equal exit rates give the constant 3/(2v)
  Generator equal = validate_generator(Matrix{{-2.0, 2.0}, {2.0, -2.0}});
  Vec keq = kemeny1_ctmc(equal, ones(2));
  CHECK(keq[0] == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(keq[1] == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("generator Kemeny route matches mixing over random generators") {
  SplitMix64 rng(43);
  for (int rep = 0; rep < 1000; ++rep) {
    Generator gen = random_generator(2 + rep % 11, rng);
    MrpSpec spec = mrp_from_generator(gen);
    KemenyReport mix = kemeny_from_mfpt(mfpt_direct(spec), stationary_profile(spec));
    CHECK(max_rel_diff(kemeny1_ctmc(gen, ones(gen.size())), mix.k1.values) <= 1e-8);
  }
}

TEST_CASE("equal mean holding times make the generator Kemeny function constant") {
  // alpha1 = alpha2 + beta2 = beta3
  Generator gen = bd_generator(BirthDeathParams{{3.0, 2.0}, {1.0, 3.0}});
  MrpSpec spec = mrp_from_generator(gen);
  ConstancyVerdict v = constancy_equivalence(spec);
  CHECK(v.mu_constant);
  CHECK(v.k1_constant);
  Vec k1 = kemeny1_ctmc(gen, ones(3));
  Constancy c = constancy_test(k1, 1e-8);
  CHECK(c.constant);
}

TEST_CASE("birth-death generator template") {
  Generator gen = bd3_gen();
  const Matrix expected{{-1.0, 1.0, 0.0}, {1.0, -3.0, 2.0}, {0.0, 2.0, -2.0}};
  CHECK(max_abs_diff(gen.q(), expected) == 0.0);
  Vec sums = gen.q().row_sums();
  for (double s : sums) CHECK(s == 0.0);

  // m = 2 reduces to the alternating two-state form
  Generator two = bd_generator(BirthDeathParams{{1.0}, {2.0}});
  CHECK(max_abs_diff(two.q(), Matrix{{-1.0, 1.0}, {2.0, -2.0}}) == 0.0);

  CHECK_THROWS_AS(bd_generator(BirthDeathParams{{1.0, -2.0}, {1.0, 2.0}}), Error);
}

TEST_CASE("closed three-state forms at the canonical rates") {
  Bd3Closed c = bd3_closed(1.0, 2.0, 1.0, 2.0);
  const double expected[3][3] = {{3.0, 1.0, 2.0}, {2.0, 1.0, 1.0}, {2.5, 0.5, 1.5}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(c.mfpt(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-13));
  CHECK(c.lambda == doctest::Approx(0.5).epsilon(1e-13));
  for (double w : c.varpi) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(c.k2_circle_constant == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("closed three-state forms against the direct solve") {
  SplitMix64 rng(47);
  for (int rep = 0; rep < 1000; ++rep) {
    const double a1 = 0.1 + 9.9 * rng.uniform();
    const double a2 = 0.1 + 9.9 * rng.uniform();
    const double b2 = 0.1 + 9.9 * rng.uniform();
    const double b3 = 0.1 + 9.9 * rng.uniform();
    Bd3Closed closed = bd3_closed(a1, a2, b2, b3);
    Generator gen = bd_generator(BirthDeathParams{{a1, a2}, {b2, b3}});
    MrpSpec spec = mrp_from_generator(gen);
    Matrix direct = mfpt_direct(spec).m;
    CHECK(max_abs_diff(closed.mfpt, direct) <= 1e-9);

    const double rho = a2 / b2;
    // recurrence scaling: m22 = m11/(1+rho) = 2 lambda
    CHECK(closed.mfpt(1, 1) == doctest::Approx(closed.mfpt(0, 0) / (1.0 + rho)).epsilon(1e-12));
    CHECK(closed.mfpt(1, 1) == doctest::Approx(2.0 * closed.lambda).epsilon(1e-12));
    // corrected cross-entry identities
    CHECK(std::abs(closed.mfpt(0, 2) - (closed.mfpt(2, 2) - 1.0 / b3 + 1.0 / a1)) <= 1e-9);
    CHECK(std::abs(closed.mfpt(1, 2) - (closed.mfpt(2, 2) - 1.0 / b3)) <= 1e-9);
    // occupancy-weighted recurrence times recover the sojourn means
    StationaryProfile prof = stationary_profile(spec);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::abs(closed.mfpt(i, i) * closed.varpi[i] - prof.mu[i]) <= 1e-9);
  }
}

TEST_CASE("degenerate u rejected by the H route") {
  CHECK_THROWS_AS(ctmc_profile_H(ctmc2_gen(), {1.0, -1.0}), Error);
}

TEST_CASE("H inverse folds into the general closed forms") {
  Generator gen = bd3_gen();
  MrpSpec spec = mrp_from_generator(gen);
  GInverse h = generator_h(gen, ones(3));
  Matrix direct = mfpt_direct(spec).m;
  CHECK(max_rel_diff(mfpt_closed(spec, h).m, direct) <= 1e-10);
  Vec k1 = kemeny_closed(spec, h, KemenyDef::K1);
  KemenyReport mix = kemeny_from_mfpt(mfpt_direct(spec), stationary_profile(spec));
  CHECK(max_rel_diff(k1, mix.k1.values) <= 1e-10);
}

TEST_CASE("inverses built for one chain are rejected by another") {
  Generator gen = bd3_gen();
  MrpSpec spec3 = mrp_from_generator(gen);
  MrpSpec other = mrp_from_generator(bd_generator(BirthDeathParams{{2.0, 1.0}, {2.0, 1.0}}));
  GInverse z = fundamental_matrix(spec3.chain(), stationary_embedded(spec3.chain()));
  try {
    kemeny_closed(other, z, KemenyDef::K1);
    FAIL("expected RouteMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RouteMismatch);
  }
  MrpSpec two = mrp_from_generator(ctmc2_gen());
  try {
    kemeny_closed(two, z, KemenyDef::K1);
    FAIL("expected RouteMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RouteMismatch);
  }
}

TEST_SUITE_END();
