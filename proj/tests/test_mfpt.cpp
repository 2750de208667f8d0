#include <doctest.h>

#include "mrp/mfpt.hpp"
#include "support.hpp"

using namespace mrp;
using namespace testsupport;

TEST_SUITE_BEGIN("mfpt");

TEST_CASE("two-state MRP closed form") {
  // M = [[mu1 + mu2 p12/p21, mu1/p12], [mu2/p21, mu1 p21/p12 + mu2]]
  MfptMatrix m = mfpt_direct(mrp2());
  CHECK(m.m(0, 0) == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(m.m(0, 1) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(m.m(1, 0) == doctest::Approx(16.0).epsilon(1e-13));
  CHECK(m.m(1, 1) == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("alternating dtmc returns in two steps") {
  MfptMatrix m = mfpt_direct(dtmc2());
  CHECK(m.m(0, 0) == doctest::Approx(2.0));
  CHECK(m.m(0, 1) == doctest::Approx(1.0));
  CHECK(m.m(1, 0) == doctest::Approx(1.0));
  CHECK(m.m(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("three-state birth-death instance") {
  MfptMatrix m = mfpt_direct(mrp_from_generator(bd3_gen()));
  const double expected[3][3] = {{3.0, 1.0, 2.0}, {2.0, 1.0, 1.0}, {2.5, 0.5, 1.5}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(m.m(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-12));
}

TEST_CASE("one-state recurrence time is the sojourn mean") {
  MrpSpec spec = MrpSpec::with_means(validate_chain(Matrix{{1.0}}), {3.25});
  MfptMatrix m = mfpt_direct(spec);
  CHECK(m.m(0, 0) == doctest::Approx(3.25));
}

TEST_CASE("closed form through Z and group inverse matches the direct solve") {
  MrpSpec spec = mrp2();
  Vec pi = stationary_embedded(spec.chain());
  MfptMatrix direct = mfpt_direct(spec);
  CHECK(max_rel_diff(mfpt_closed(spec, fundamental_matrix(spec.chain(), pi)).m, direct.m) <=
        1e-12);
  CHECK(max_rel_diff(mfpt_closed(spec, group_inverse(spec.chain(), pi)).m, direct.m) <= 1e-12);

  MrpSpec d = dtmc2();
  Vec pid = stationary_embedded(d.chain());
  MfptMatrix dd = mfpt_direct(d);
  CHECK(max_rel_diff(mfpt_closed(d, group_inverse(d.chain(), pid)).m, dd.m) <= 1e-12);
}

TEST_CASE("parametric route is independent of u") {
  MrpSpec spec = mrp2();
  MfptMatrix direct = mfpt_direct(spec);
  CHECK(max_rel_diff(mfpt_gtilde(spec, ones(2)).m, direct.m) <= 1e-12);
  CHECK(max_rel_diff(mfpt_gtilde(spec, stationary_embedded(spec.chain())).m, direct.m) <=
        1e-12);
  CHECK(max_rel_diff(mfpt_gtilde(spec, {0.3, 2.0}).m, direct.m) <= 1e-11);
}

TEST_CASE("dtmc parametric route reproduces the unit-sojourn closed form") {
  MrpSpec d = dtmc2();
  MfptMatrix direct = mfpt_direct(d);
  CHECK(max_rel_diff(mfpt_gtilde(d, stationary_embedded(d.chain())).m, direct.m) <= 1e-12);
}

TEST_CASE("matrix equation residual") {
  MrpSpec spec = mrp2();
  MfptMatrix m = mfpt_direct(spec);
  CHECK(mfpt_residual(m, spec) <= 1e-9);

  // perturbing one entry breaks the affine identity
  MfptMatrix bad = m;
  bad.m(0, 1) += 1.0;
  CHECK(mfpt_residual(bad, spec) > 0.1);

  // dtmc case reduces to the unit-sojourn equation
  MfptMatrix md = mfpt_direct(dtmc2());
  CHECK(mfpt_residual(md, dtmc2()) <= 1e-9);
}

TEST_CASE("route agreement over the random population") {
  SplitMix64 rng(kPopulationSeed + 2);
  for (std::size_t k = 0; k < 1000; ++k) {
    MrpSpec spec = population_case(k, rng);
    const std::size_t m = spec.size();
    Vec pi = stationary_embedded(spec.chain());
    MfptMatrix direct = mfpt_direct(spec);

    CHECK(max_rel_diff(mfpt_closed(spec, fundamental_matrix(spec.chain(), pi)).m, direct.m) <=
          1e-8);
    CHECK(max_rel_diff(mfpt_closed(spec, group_inverse(spec.chain(), pi)).m, direct.m) <= 1e-8);
    CHECK(max_rel_diff(mfpt_gtilde(spec, ones(m)).m, direct.m) <= 1e-8);
    CHECK(max_rel_diff(mfpt_gtilde(spec, pi).m, direct.m) <= 1e-8);

    // recurrence identities and positivity
    StationaryProfile prof = stationary_profile(spec);
    double smallest = direct.m(0, 0);
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(std::abs(prof.pi[i] * direct.m(i, i) - prof.lambda) <= 1e-9);
      CHECK(std::abs(prof.varpi[i] * direct.m(i, i) - prof.mu[i]) <= 1e-9);
      for (std::size_t j = 0; j < m; ++j) smallest = std::min(smallest, direct.m(i, j));
    }
    CHECK(smallest > 0.0);
    CHECK(mfpt_residual(direct, spec) <= 1e-9);
  }
}

TEST_CASE("dtmc recurrence times are reciprocal stationary probabilities") {
  SplitMix64 rng(kPopulationSeed + 3);
  for (int rep = 0; rep < 100; ++rep) {
    MrpSpec spec = MrpSpec::dtmc(validate_chain(random_stochastic(2 + rep % 11, rng)));
    Vec pi = stationary_embedded(spec.chain());
    MfptMatrix m = mfpt_direct(spec);
    for (std::size_t i = 0; i < spec.size(); ++i)
      CHECK(std::abs(m.m(i, i) - 1.0 / pi[i]) <= 1e-9);
  }
}

TEST_CASE("unit sojourns collapse the general closed form to the dtmc one") {
  // with mu = e the general closed form and the dtmc closed form are the
  // same expression; check both against the direct solve
  SplitMix64 rng(kPopulationSeed + 4);
  for (int rep = 0; rep < 1000; ++rep) {
    MrpSpec spec = MrpSpec::dtmc(validate_chain(random_stochastic(2 + rep % 11, rng)));
    Vec pi = stationary_embedded(spec.chain());
    MfptMatrix direct = mfpt_direct(spec);
    MfptMatrix closed = mfpt_closed(spec, fundamental_matrix(spec.chain(), pi));
    CHECK(max_rel_diff(closed.m, direct.m) <= 1e-8);
  }
}

TEST_SUITE_END();
