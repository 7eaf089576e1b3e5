#include "doctest.h"

#include <cmath>

#include "coposolve/cptest.hpp"
#include "coposolve/generators.hpp"
#include "coposolve/stqp.hpp"

using namespace coposolve;

namespace {

SymMatrix offdiag_unit() {
  SymMatrix m(2);
  m.set(0, 1, 1.0 / std::sqrt(2.0));
  return m;
}

}  // namespace

TEST_CASE("input normalization") {
  const SymMatrix n2 = normalize_input(SymMatrix::identity(2));
  CHECK(n2(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(frobenius_norm(n2) == doctest::Approx(1.0));

  // already normalized input is unchanged
  const SymMatrix again = normalize_input(n2);
  CHECK(std::fabs(again(0, 0) - n2(0, 0)) <= 1e-12);

  RngStream rng(71);
  for (int rep = 0; rep < 10; ++rep) {
    const SymMatrix c = gen_stqp_instance(4, rng);
    CHECK(std::fabs(frobenius_norm(normalize_input(c)) - 1.0) <= 1e-12);
  }

  CHECK_THROWS_AS(normalize_input(SymMatrix(3)), ZeroMatrixError);
}

TEST_CASE("ball projection") {
  RngStream rng(72);
  const SymMatrix small = gen_stqp_instance(3, rng).scaled(0.01);
  const SymMatrix same = ball_projection(small, 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(same(i, j) == small(i, j));

  SymMatrix big = gen_stqp_instance(3, rng);
  big = big.scaled(2.0 / frobenius_norm(big));
  const SymMatrix halved = ball_projection(big, 1.0);
  CHECK(frobenius_norm(halved) == doctest::Approx(1.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(halved(i, j) == doctest::Approx(big(i, j) * 0.5));

  // no in-ball perturbation of the projection is closer to the argument
  const SymMatrix x = gen_stqp_instance(3, rng).scaled(3.0);
  const SymMatrix p = ball_projection(x, 1.0);
  SymMatrix diff = x;
  diff.add_scaled(p, -1.0);
  const double best = frobenius_norm(diff);
  for (int rep = 0; rep < 200; ++rep) {
    SymMatrix candidate = p;
    candidate.add_scaled(gen_stqp_instance(3, rng), 0.05);
    if (frobenius_norm(candidate) > 1.0) continue;
    SymMatrix d2 = x;
    d2.add_scaled(candidate, -1.0);
    CHECK(frobenius_norm(d2) >= best - 1e-9);
  }
}

TEST_CASE("constraint subgradient is a negated outer product") {
  const SymMatrix vertex = cp_constraint_subgradient(SimplexPoint::vertex(3, 0));
  CHECK(vertex(0, 0) == doctest::Approx(-1.0));
  CHECK(frobenius_norm(vertex) == doctest::Approx(1.0));

  const SymMatrix bary = cp_constraint_subgradient(SimplexPoint::barycenter(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(bary(i, j) == doctest::Approx(-0.25));
  CHECK(frobenius_norm(bary) == doctest::Approx(0.5));

  RngStream rng(73);
  for (int rep = 0; rep < 10'000; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const SimplexPoint d = sample_simplex_uniform(n, rng);
    double sq = 0.0;
    for (int i = 0; i < n; ++i) sq += d[i] * d[i];
    const SymMatrix g = cp_constraint_subgradient(d);
    CHECK(frobenius_norm(g) == doctest::Approx(sq).epsilon(1e-10));
    CHECK(frobenius_norm(g) <= 1.0 + 1e-12);
  }
}

TEST_CASE("config validation") {
  CpTestConfig cfg = CpTestConfig::defaults_for(4);
  CHECK(cfg.t == 55.0);
  CHECK(CpTestConfig::defaults_for(10).t == 15.0);

  cfg.t = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.t = 10.0;
  cfg.alpha = 1.0;  // disagrees with the exact oracle's alpha
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("known non-cp matrix is certified") {
  CpTestConfig cfg = CpTestConfig::defaults_for(2);
  cfg.t = 10.0;
  RngStream rng(74);
  const CpVerdict v = test_cp(offdiag_unit(), cfg, rng);
  CHECK(v.verdict == CpStatus::NotCompletelyPositive);
  REQUIRE(v.certificate.has_value());
  // threshold: -n(1+alpha) eps = -2 * 0.05
  CHECK(v.objective < -0.1);
  CHECK(v.epsilon_used == doctest::Approx(0.05));
  REQUIRE(v.exact_separation.has_value());
  CHECK(*v.exact_separation);
  CHECK(v.terminated_by == Termination::CertificateFound);

  // certificate invariants hold on recomputation
  const SymMatrix cn = normalize_input(offdiag_unit());
  CHECK(frobenius_inner(cn, *v.certificate) == doctest::Approx(v.objective).epsilon(1e-10));
  REQUIRE(v.certificate_delta.has_value());
  CHECK(-quadratic_form(*v.certificate, *v.certificate_delta) <= v.epsilon_used + 1e-12);

  // the shifted separator is itself copositive with negative objective
  REQUIRE(v.separating_copositive.has_value());
  CHECK(stqp_exact(*v.separating_copositive).value >= -1e-10);
  CHECK(frobenius_inner(cn, *v.separating_copositive) < 0.0);
}

TEST_CASE("identity stays inconclusive") {
  CpTestConfig cfg = CpTestConfig::defaults_for(3);
  cfg.t = 5.0;  // short run is enough for soundness
  RngStream rng(75);
  const CpVerdict v = test_cp(SymMatrix::identity(3), cfg, rng);
  CHECK(v.verdict == CpStatus::Inconclusive);
  CHECK(!v.certificate.has_value());
  // the scheduled iteration count ran out and still produced an
  // in-tolerance iterate: ceil(t^2 (1+alpha)^2 n^2) with n = 3, t = 5
  CHECK(v.iterations_used == 225);
  CHECK(v.found_in_tolerance_iterate);
  CHECK(v.terminated_by == Termination::IterationCap);
}

TEST_CASE("product constructions stay inconclusive across seeds") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RngStream gen_rng(800 + seed);
    const SymMatrix c = normalize_input(gen_cp_product(6, 10, gen_rng));
    CpTestConfig cfg = CpTestConfig::defaults_for(6);
    cfg.t = 3.0;
    RngStream rng(900 + seed);
    const CpVerdict v = test_cp(c, cfg, rng);
    CHECK(v.verdict == CpStatus::Inconclusive);
    CHECK(v.found_in_tolerance_iterate);
  }
}

TEST_CASE("zero matrix short-circuits") {
  CpTestConfig cfg = CpTestConfig::defaults_for(3);
  RngStream rng(76);
  const CpVerdict v = test_cp(SymMatrix(3), cfg, rng);
  CHECK(v.verdict == CpStatus::Inconclusive);
  CHECK(v.iterations_used == 0);
}

TEST_CASE("verdict serializes") {
  CpTestConfig cfg = CpTestConfig::defaults_for(2);
  cfg.t = 10.0;
  RngStream rng(77);
  const CpVerdict v = test_cp(offdiag_unit(), cfg, rng);
  const std::string json = v.to_json(2, cfg);
  CHECK(json.find("not_completely_positive") != std::string::npos);
  CHECK(json.find("\"certificate\"") != std::string::npos);
  CHECK(json.find("\"exact_separation\"") != std::string::npos);
}
