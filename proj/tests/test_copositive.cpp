#include "doctest.h"

#include <cmath>

#include "coposolve/copositive.hpp"
#include "coposolve/generators.hpp"
#include "coposolve/sip.hpp"

using namespace coposolve;

namespace {

CoppInstance small_instance(RngStream& rng, int m, int n) {
  CoppInstance inst;
  inst.m = m;
  inst.n = n;
  inst.c.resize(m);
  for (auto& v : inst.c) v = rng.uniform(-1.0, 1.0);
  for (int k = 0; k <= m; ++k) inst.A.push_back(gen_stqp_instance(n, rng));
  return inst;
}

}  // namespace

TEST_CASE("slack matrix assembly") {
  RngStream rng(61);
  CoppInstance inst = small_instance(rng, 3, 4);

  SUBCASE("x = 0 returns A_0") {
    const SymMatrix s = slack_matrix(inst, {0.0, 0.0, 0.0});
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(s(i, j) == inst.A[0](i, j));
  }

  SUBCASE("single identity term") {
    CoppInstance simple;
    simple.m = 1;
    simple.n = 3;
    simple.c = {1.0};
    simple.A.push_back(SymMatrix(3));
    simple.A.push_back(SymMatrix::identity(3));
    const SymMatrix s = slack_matrix(simple, {2.0});
    for (int i = 0; i < 3; ++i) CHECK(s(i, i) == doctest::Approx(2.0));
    CHECK(s(0, 1) == doctest::Approx(0.0));
  }

  SUBCASE("matches elementwise accumulation") {
    const Vec x = {0.3, -1.2, 0.7};
    const SymMatrix s = slack_matrix(inst, x);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double acc = inst.A[0](i, j);
        for (int k = 0; k < 3; ++k) acc += x[k] * inst.A[k + 1](i, j);
        CHECK(s(i, j) == doctest::Approx(acc).epsilon(1e-12));
      }
  }

  CHECK_THROWS_AS(slack_matrix(inst, {1.0}), DimensionError);
}

TEST_CASE("constraint value sign convention") {
  CoppInstance inst;
  inst.m = 1;
  inst.n = 3;
  inst.c = {0.0};
  inst.A.push_back(SymMatrix::identity(3));  // A_0 = I: slack copositive at x = 0
  inst.A.push_back(SymMatrix(3));

  RngStream rng(62);
  const SimplexPoint d = sample_simplex_uniform(3, rng);
  const double g = copp_constraint_value(inst, {0.0}, d);
  CHECK(g < 0.0);
  CHECK(g == doctest::Approx(-quadratic_form(SymMatrix::identity(3), d)));

  // slack -I violates copositivity at any vertex
  CoppInstance neg = inst;
  neg.A[0] = SymMatrix::identity(3).scaled(-1.0);
  CHECK(copp_constraint_value(neg, {0.0}, SimplexPoint::vertex(3, 0)) == doctest::Approx(1.0));
}

TEST_CASE("constraint subgradient") {
  SUBCASE("identity coefficient at the barycenter") {
    CoppInstance inst;
    inst.m = 1;
    inst.n = 2;
    inst.c = {0.0};
    inst.A.push_back(SymMatrix(2));
    inst.A.push_back(SymMatrix::identity(2));
    const Vec g = copp_constraint_subgradient(inst, {0.0}, SimplexPoint::barycenter(2));
    CHECK(g[0] == doctest::Approx(-0.5));
  }

  SUBCASE("all-zero coefficient matrices give the zero vector") {
    CoppInstance inst;
    inst.m = 2;
    inst.n = 3;
    inst.c = {0.0, 0.0};
    for (int k = 0; k < 3; ++k) inst.A.push_back(SymMatrix(3));
    const Vec g = copp_constraint_subgradient(inst, {0.0, 0.0}, SimplexPoint::barycenter(3));
    CHECK(g == Vec{0.0, 0.0});
  }

  SUBCASE("forward difference agrees") {
    RngStream rng(63);
    for (int rep = 0; rep < 5; ++rep) {
      CoppInstance inst = small_instance(rng, 3, 4);
      Vec x = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
      const SimplexPoint d = sample_simplex_uniform(4, rng);
      const Vec g = copp_constraint_subgradient(inst, x, d);
      const double h = 1e-7;
      for (int i = 0; i < 3; ++i) {
        Vec xp = x;
        xp[i] += h;
        const double fd =
            (copp_constraint_value(inst, xp, d) - copp_constraint_value(inst, x, d)) / h;
        CHECK(std::fabs(fd - g[i]) <= 1e-6);
      }
    }
  }
}

TEST_CASE("subgradient norm bound") {
  SUBCASE("formula value") {
    CoppInstance inst;
    inst.m = 2;
    inst.n = 2;
    inst.c = {3.0, 4.0};
    inst.A.push_back(SymMatrix(2));
    SymMatrix a1(2);
    a1.set(0, 1, 1.0);  // max |entry| = 1
    SymMatrix a2(2);
    a2.set(0, 0, -1.0);
    inst.A.push_back(a1);
    inst.A.push_back(a2);
    CHECK(estimate_L(inst) == doctest::Approx(5.0));  // max{5, sqrt(2)}
  }

  SUBCASE("identity coefficient floor") {
    CoppInstance inst;
    inst.m = 1;
    inst.n = 3;
    inst.c = {0.2};
    inst.A.push_back(SymMatrix(3));
    inst.A.push_back(SymMatrix::identity(3));
    CHECK(estimate_L(inst) == doctest::Approx(1.0));  // max{0.2, 1}
  }

  SUBCASE("dominates sampled constraint subgradients") {
    RngStream rng(64);
    for (int rep = 0; rep < 3; ++rep) {
      CoppInstance inst = small_instance(rng, 4, 5);
      const double L = estimate_L(inst);
      const Vec x(4, 0.0);
      for (int i = 0; i < 10'000; ++i) {
        const SimplexPoint d = sample_simplex_uniform(5, rng);
        CHECK(norm2(copp_constraint_subgradient(inst, x, d)) <= L + 1e-9);
      }
    }
  }

  SUBCASE("scales linearly with the data") {
    RngStream rng(65);
    CoppInstance inst = small_instance(rng, 3, 4);
    CoppInstance scaled = inst;
    const double t = 3.5;
    for (auto& v : scaled.c) v *= t;
    for (auto& a : scaled.A) a = a.scaled(t);
    CHECK(estimate_L(scaled) == doctest::Approx(t * estimate_L(inst)).epsilon(1e-12));
  }
}

TEST_CASE("oracle answers match the configured solver") {
  RngStream rng(66);
  CoppInstance inst = small_instance(rng, 3, 5);

  SUBCASE("zero slack matrix short-circuits") {
    CoppInstance zero;
    zero.m = 1;
    zero.n = 4;
    zero.c = {1.0};
    zero.A.push_back(SymMatrix(4));
    zero.A.push_back(SymMatrix(4));
    CoppOracleConfig cfg;
    RngStream orng(1);
    SipProblem p = build_sip(zero, cfg, 0.5, orng);
    const OracleAnswer ans = p.index_oracle({0.0});
    CHECK(ans.g_value == 0.0);
  }

  SUBCASE("exact oracle returns the negated minimum") {
    CoppOracleConfig cfg;
    RngStream orng(2);
    SipProblem p = build_sip(inst, cfg, 0.5, orng);
    const Vec x = {0.4, -0.2, 0.9};
    const OracleAnswer ans = p.index_oracle(x);
    const double gamma = stqp_exact(slack_matrix(inst, x)).value;
    CHECK(ans.g_value == doctest::Approx(-gamma).epsilon(1e-8));
    // returned g equals the constraint value at the returned index
    CHECK(ans.g_value ==
          doctest::Approx(copp_constraint_value(inst, x, ans.delta)).epsilon(1e-10));
  }

  SUBCASE("grid oracle honors its slack contract against the exact value") {
    CoppOracleConfig cfg;
    cfg.method = StqpMethod::Grid;
    cfg.alpha = 1.0;
    const double epsilon = 0.25;
    RngStream orng(3);
    SipProblem p = build_sip(inst, cfg, epsilon, orng);
    RngStream xrng(4);
    for (int rep = 0; rep < 10; ++rep) {
      const Vec x = {xrng.uniform(-1, 1), xrng.uniform(-1, 1), xrng.uniform(-1, 1)};
      const OracleAnswer ans = p.index_oracle(x);
      const double g_true = -stqp_exact(slack_matrix(inst, x)).value;
      CHECK(g_true - ans.g_value >= -1e-10);
      CHECK(g_true - ans.g_value <= cfg.alpha * epsilon + 1e-10);
    }
  }

  SUBCASE("exact oracle above the cap fails at build time") {
    CoppOracleConfig cfg;
    cfg.exact_cap = 4;
    RngStream orng(5);
    CHECK_THROWS_AS(build_sip(inst, cfg, 0.5, orng), ExactSolverCapError);
  }

  SUBCASE("config validation") {
    CoppOracleConfig bad_exact;
    bad_exact.alpha = 0.5;
    CHECK_THROWS_AS(bad_exact.validate(), ConfigError);
    CoppOracleConfig bad_grid;
    bad_grid.method = StqpMethod::Grid;
    bad_grid.alpha = 0.0;
    CHECK_THROWS_AS(bad_grid.validate(), ConfigError);
  }
}

TEST_CASE("family instance solves to its known optimum") {
  RngStream gen_rng(67);
  const CoppInstance inst = gen_copp_instance(5, gen_rng);
  CoppOracleConfig oracle;
  const double epsilon = 0.5;
  RngStream orng(68);
  SipProblem p = build_sip(inst, oracle, epsilon, orng);
  SipConfig cfg;
  cfg.epsilon = epsilon;
  cfg.max_iterations = iteration_bound(p.L, std::sqrt(5.0), epsilon);
  const SipOutcome out = run(p, Vec(5, 1.0), cfg);
  const CheckResult check = theorem_check(out.report, 0.0, epsilon, 0.0);
  CHECK(check.status == CheckStatus::Pass);
}

TEST_CASE("ball-constrained instance keeps iterates inside the ball") {
  RngStream rng(71);
  CoppInstance inst = small_instance(rng, 3, 4);
  inst.feasible_set = FeasibleSet::ball(Vec(3, 0.0), 2.0);
  CoppOracleConfig oracle;
  RngStream orng(72);
  SipProblem p = build_sip(inst, oracle, 0.3, orng);
  SipConfig cfg;
  cfg.epsilon = 0.3;
  cfg.max_iterations = 50;
  cfg.observer = [](const IterationRecord&, const Vec&, const Vec& x_next) {
    CHECK(norm2(x_next) <= 2.0 + 1e-9);
  };
  const SipOutcome out = run(p, Vec(3, 5.0), cfg);  // starts outside, gets projected
  CHECK(out.report.x1_projected);
}

TEST_CASE("family instance passes with the inexact grid oracle") {
  // alpha = 1 and total tolerance eps(1+alpha) = 2
  RngStream gen_rng(69);
  const CoppInstance inst = gen_copp_instance(5, gen_rng);
  CoppOracleConfig oracle;
  oracle.method = StqpMethod::Grid;
  oracle.alpha = 1.0;
  const double epsilon = 1.0;
  RngStream orng(70);
  SipProblem p = build_sip(inst, oracle, epsilon, orng);
  SipConfig cfg;
  cfg.epsilon = epsilon;
  cfg.alpha = 1.0;
  cfg.max_iterations = iteration_bound(p.L, std::sqrt(5.0), epsilon);
  const SipOutcome out = run(p, Vec(5, 1.0), cfg);
  REQUIRE(out.report.k_star.has_value());
  // audited violation obeys the (1 + alpha) tolerance, objective the plain one
  const CheckResult check = theorem_check(out.report, 0.0, epsilon, 1.0);
  CHECK(check.status == CheckStatus::Pass);
  CHECK(out.report.f_at_kstar.value() <= epsilon);
  CHECK(!out.report.probabilistic);
}
