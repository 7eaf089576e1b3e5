#include "coposolve/sip.hpp"

#include <chrono>
#include <cmath>

namespace coposolve {

std::int64_t iteration_bound(double L, double dist_bound, double epsilon) {
  if (!(L > 0.0) || !(epsilon > 0.0) || dist_bound < 0.0)
    throw Error("iteration_bound: L and epsilon must be positive, dist nonnegative");
  const double raw = (L * L * dist_bound * dist_bound) / (epsilon * epsilon);
  if (raw >= 9.0e18) throw Error("iteration_bound: bound overflows int64");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw)));
}

Vec subgradient_step(const Vec& x, const Vec& d, double step_numerator,
                     const std::function<Vec(const Vec&)>& project) {
  if (d.size() != x.size()) throw DimensionError("subgradient_step: dimension mismatch");
  if (step_numerator == 0.0) return project(x);
  const double dd = dot(d, d);
  if (dd == 0.0) throw ZeroSubgradientError("subgradient_step: zero subgradient");
  const double scale = step_numerator / dd;
  Vec next(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) next[i] = x[i] - scale * d[i];
  return project(next);
}

SipOutcome run(const SipProblem& problem, const Vec& x1, const SipConfig& config) {
  if (!(config.epsilon > 0.0)) throw Error("run: epsilon must be positive");
  if (config.alpha < 0.0) throw Error("run: alpha must be nonnegative");
  if (config.max_iterations < 1) throw Error("run: max_iterations must be >= 1");

  using Clock = std::chrono::steady_clock;
  const auto t_start = Clock::now();
  auto seconds_since = [](Clock::time_point from) {
    return std::chrono::duration<double>(Clock::now() - from).count();
  };

  SipOutcome out;
  out.report.epsilon = config.epsilon;

  Vec x = problem.projection(x1);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != x1[i]) {
      out.report.x1_projected = true;
      break;
    }

  std::optional<double> best_f;
  out.report.terminated_by = Termination::IterationCap;

  for (std::int64_t k = 1; k <= config.max_iterations; ++k) {
    const auto t_iter = Clock::now();
    OracleAnswer ans = problem.index_oracle(x);
    if (ans.probabilistic) out.report.probabilistic = true;
    const double f_k = problem.objective_value(x);
    const bool within = ans.g_value <= config.epsilon;

    IterationRecord rec;
    rec.k = k;
    rec.branch = within ? Branch::Objective : Branch::Constraint;
    rec.g_value = ans.g_value;
    rec.f_value = f_k;
    rec.subproblem_evals = ans.evaluations;

    if (within && (!best_f || f_k < *best_f)) {
      best_f = f_k;
      out.report.k_star = k;
      out.report.f_at_kstar = f_k;
      out.best_point = x;
      out.best_delta = ans.delta;
    }

    bool stop = false;
    Termination stop_reason = Termination::IterationCap;
    if (config.early_exit && config.early_exit(k, x, ans.g_value, f_k)) {
      stop = true;
      stop_reason = Termination::CertificateFound;
    }

    Vec x_next = x;
    if (!stop) {
      if (within) {
        const Vec d = problem.objective_subgradient(x);
        if (dot(d, d) == 0.0) {
          // linear objective with zero gradient: every feasible point is
          // objective-optimal, stay put
          x_next = x;
        } else {
          x_next = subgradient_step(x, d, config.epsilon, problem.projection);
        }
      } else {
        const Vec d = problem.constraint_subgradient(x, ans.delta);
        x_next = subgradient_step(x, d, ans.g_value, problem.projection);
      }
    }

    rec.elapsed = seconds_since(t_iter);
    out.report.iterations.push_back(rec);
    if (config.observer) config.observer(rec, x, x_next);

    if (stop) {
      out.report.terminated_by = stop_reason;
      break;
    }
    x = std::move(x_next);

    if (config.time_cap_seconds && seconds_since(t_start) > *config.time_cap_seconds) {
      out.report.terminated_by = Termination::TimeCap;
      break;
    }
  }

  if (out.best_point && problem.audit_oracle)
    out.report.G_check = problem.audit_oracle(*out.best_point);
  return out;
}

CheckResult theorem_check(const RunReport& report, double f_star_bound, double epsilon,
                          double alpha) {
  CheckResult res;
  if (!report.k_star || !report.f_at_kstar) {
    res.status = CheckStatus::Inconclusive;
    res.detail = "no iterate met the violation tolerance";
    return res;
  }
  if (!report.G_check) {
    res.status = CheckStatus::Inconclusive;
    res.detail = "no constraint audit value available";
    return res;
  }
  res.objective_margin = (f_star_bound + epsilon) - *report.f_at_kstar;
  res.constraint_margin = (1.0 + alpha) * epsilon - *report.G_check;
  if (res.objective_margin >= 0.0 && res.constraint_margin >= 0.0) {
    res.status = CheckStatus::Pass;
  } else {
    res.status = CheckStatus::Fail;
    res.detail = res.objective_margin < 0.0 ? "objective bound violated"
                                            : "constraint bound violated";
  }
  return res;
}

}  // namespace coposolve
