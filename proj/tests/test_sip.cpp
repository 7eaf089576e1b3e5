#include "doctest.h"

#include <cmath>

#include "coposolve/sip.hpp"

using namespace coposolve;

namespace {

// scalar problem: minimize x over x >= 0 with a vacuous constraint
SipProblem trivial_problem() {
  SipProblem p;
  p.L = 1.0;
  p.objective_value = [](const Vec& x) { return x[0]; };
  p.objective_subgradient = [](const Vec&) { return Vec{1.0}; };
  p.constraint_value = [](const Vec&, const SimplexPoint&) { return -1.0; };
  p.constraint_subgradient = [](const Vec&, const SimplexPoint&) { return Vec{0.0}; };
  p.index_oracle = [](const Vec&) {
    return OracleAnswer{SimplexPoint::barycenter(1), -1.0, 1, false};
  };
  p.projection = [](const Vec& x) { return Vec{std::max(x[0], 0.0)}; };
  p.audit_oracle = [](const Vec&) { return std::optional<double>(-1.0); };
  return p;
}

}  // namespace

TEST_CASE("iteration bound") {
  CHECK(iteration_bound(1.0, 1.0, 0.1) == 100);
  CHECK(iteration_bound(3.0, 0.0, 0.5) == 1);
  CHECK(iteration_bound(2.0, std::sqrt(5.0), 0.2) == 500);  // 5 L^2 / eps^2
}

TEST_CASE("subgradient step") {
  auto identity = [](const Vec& x) { return x; };
  const Vec scalar = subgradient_step({5.0}, {1.0}, 0.1, identity);
  CHECK(scalar[0] == doctest::Approx(4.9));

  auto unit_ball = [](const Vec& x) {
    const double nrm = norm2(x);
    if (nrm <= 1.0) return x;
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / nrm;
    return out;
  };
  const Vec clamped = subgradient_step({1.0, 0.0}, {-1.0, 0.0}, 1.0, unit_ball);
  CHECK(clamped[0] == doctest::Approx(1.0));
  CHECK(clamped[1] == doctest::Approx(0.0));

  auto orthant = [](const Vec& x) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], 0.0);
    return out;
  };
  const Vec corner = subgradient_step({0.2, 0.1}, {1.0, 1.0}, 0.4, orthant);
  CHECK(corner[0] == doctest::Approx(0.0));
  CHECK(corner[1] == doctest::Approx(0.0));

  CHECK_THROWS_AS(subgradient_step({1.0}, {0.0}, 0.5, identity), ZeroSubgradientError);
}

TEST_CASE("run descends a linear objective to the orthant boundary") {
  SipConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 100;
  const SipOutcome out = run(trivial_problem(), {1.0}, cfg);
  REQUIRE(out.report.k_star.has_value());
  CHECK(*out.report.f_at_kstar == doctest::Approx(0.0));
  CHECK((*out.best_point)[0] == doctest::Approx(0.0));
  CHECK(out.report.terminated_by == Termination::IterationCap);
  // every iteration took the objective branch
  for (const auto& rec : out.report.iterations) CHECK(rec.branch == Branch::Objective);
  // iterates descend by epsilon until the projection clamps
  CHECK(out.report.iterations[0].f_value == doctest::Approx(1.0));
  CHECK(out.report.iterations[5].f_value == doctest::Approx(0.5));
}

TEST_CASE("k_star minimizes f over the in-tolerance iterations") {
  SipConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 40;
  const SipOutcome out = run(trivial_problem(), {1.0}, cfg);
  REQUIRE(out.report.k_star.has_value());
  double best = 1e300;
  std::int64_t best_k = -1;
  for (const auto& rec : out.report.iterations) {
    if (rec.g_value <= cfg.epsilon && rec.f_value < best) {
      best = rec.f_value;
      best_k = rec.k;
    }
  }
  CHECK(*out.report.k_star == best_k);
  CHECK(*out.report.f_at_kstar == best);
}

TEST_CASE("initial point outside the set is projected and flagged") {
  SipConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 3;
  const SipOutcome out = run(trivial_problem(), {-2.0}, cfg);
  CHECK(out.report.x1_projected);
  CHECK(out.report.iterations[0].f_value == doctest::Approx(0.0));
}

TEST_CASE("early exit reports a found certificate") {
  SipConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 100;
  cfg.early_exit = [](std::int64_t, const Vec&, double, double f) { return f <= 0.5; };
  const SipOutcome out = run(trivial_problem(), {1.0}, cfg);
  CHECK(out.report.terminated_by == Termination::CertificateFound);
  CHECK(out.report.iterations.size() < 100);
}

TEST_CASE("time cap stops between iterations") {
  SipConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 1'000'000;
  cfg.time_cap_seconds = 0.0;  // expires after the first iteration
  const SipOutcome out = run(trivial_problem(), {1.0}, cfg);
  CHECK(out.report.terminated_by == Termination::TimeCap);
  CHECK(out.report.iterations.size() == 1);
}

TEST_CASE("zero objective subgradient leaves the iterate in place") {
  SipProblem p = trivial_problem();
  p.objective_value = [](const Vec&) { return 3.0; };
  p.objective_subgradient = [](const Vec&) { return Vec{0.0}; };
  SipConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 5;
  const SipOutcome out = run(p, {1.0}, cfg);
  CHECK((*out.best_point)[0] == doctest::Approx(1.0));
}

TEST_CASE("theorem check") {
  SipConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 100;
  const SipOutcome out = run(trivial_problem(), {1.0}, cfg);

  SUBCASE("pass on the solved problem") {
    // f* = 0 for min x over x >= 0
    const CheckResult res = theorem_check(out.report, 0.0, cfg.epsilon, 0.0);
    CHECK(res.status == CheckStatus::Pass);
    CHECK(res.objective_margin >= 0.0);
  }

  SUBCASE("fail when the claimed optimum is unreachable") {
    const CheckResult res = theorem_check(out.report, -5.0, cfg.epsilon, 0.0);
    CHECK(res.status == CheckStatus::Fail);
  }

  SUBCASE("inconclusive without an audit value") {
    RunReport r = out.report;
    r.G_check.reset();
    CHECK(theorem_check(r, 0.0, cfg.epsilon, 0.0).status == CheckStatus::Inconclusive);
  }

  SUBCASE("inconclusive when no iterate was in tolerance") {
    SipProblem hard = trivial_problem();
    hard.index_oracle = [](const Vec&) {
      return OracleAnswer{SimplexPoint::barycenter(1), 5.0, 1, false};
    };
    hard.constraint_subgradient = [](const Vec&, const SimplexPoint&) { return Vec{1.0}; };
    SipConfig one;
    one.epsilon = 0.1;
    one.max_iterations = 1;
    const SipOutcome truncated = run(hard, {1.0}, one);
    CHECK(!truncated.report.k_star.has_value());
    CHECK(theorem_check(truncated.report, 0.0, 0.1, 0.0).status == CheckStatus::Inconclusive);
  }
}

TEST_CASE("run report serializes with schema tag") {
  SipConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 5;
  const SipOutcome out = run(trivial_problem(), {1.0}, cfg);
  const std::string json = out.report.to_json(out.best_point ? &*out.best_point : nullptr);
  CHECK(json.find("coposolve/run/1") != std::string::npos);
  CHECK(json.find("\"k_star\"") != std::string::npos);
  CHECK(json.find("\"iterations\"") != std::string::npos);
}

TEST_CASE("identical runs produce identical reports") {
  SipConfig cfg;
  cfg.epsilon = 0.1;
  cfg.max_iterations = 20;
  const SipOutcome a = run(trivial_problem(), {1.0}, cfg);
  const SipOutcome b = run(trivial_problem(), {1.0}, cfg);
  REQUIRE(a.report.iterations.size() == b.report.iterations.size());
  for (std::size_t i = 0; i < a.report.iterations.size(); ++i) {
    CHECK(a.report.iterations[i].f_value == b.report.iterations[i].f_value);
    CHECK(a.report.iterations[i].g_value == b.report.iterations[i].g_value);
  }
}
