#include "coposolve/copositive.hpp"

#include <cmath>

namespace coposolve {

void CoppOracleConfig::validate() const {
  if (method == StqpMethod::Exact) {
    if (alpha != 0.0)
      throw ConfigError("oracle config: exact subproblem solves require alpha = 0");
  } else {
    if (!(alpha > 0.0))
      throw ConfigError("oracle config: inexact subproblem solves require alpha > 0");
  }
  if ((method == StqpMethod::SimplexSample || method == StqpMethod::GridSample)) {
    if (phi && !(*phi > 0.0 && *phi < 1.0))
      throw ConfigError("oracle config: phi must lie in (0,1)");
  }
  if (sample_fraction && !(*sample_fraction > 0.0 && *sample_fraction <= 1.0))
    throw ConfigError("oracle config: sample_fraction must lie in (0,1]");
}

SymMatrix slack_matrix(const CoppInstance& instance, const Vec& x) {
  if (static_cast<int>(x.size()) != instance.m)
    throw DimensionError("slack_matrix: x length != m");
  SymMatrix q = instance.A[0];
  for (int i = 0; i < instance.m; ++i) q.add_scaled(instance.A[i + 1], x[i]);
  return q;
}

double copp_constraint_value(const CoppInstance& instance, const Vec& x,
                             const SimplexPoint& delta) {
  return -quadratic_form(slack_matrix(instance, x), delta);
}

Vec copp_constraint_subgradient(const CoppInstance& instance, const Vec& x,
                                const SimplexPoint& delta) {
  if (static_cast<int>(x.size()) != instance.m)
    throw DimensionError("copp_constraint_subgradient: x length != m");
  if (instance.n != delta.dim())
    throw DimensionError("copp_constraint_subgradient: delta dimension mismatch");
  Vec g(instance.m);
  for (int i = 0; i < instance.m; ++i) g[i] = -quadratic_form(instance.A[i + 1], delta);
  return g;
}

double estimate_L(const CoppInstance& instance) {
  double constraint_part = 0.0;
  for (int i = 0; i < instance.m; ++i) {
    const double mx = instance.A[i + 1].max_abs_entry();
    constraint_part += mx * mx;
  }
  return std::max(norm2(instance.c), std::sqrt(constraint_part));
}

OracleAnswer stqp_oracle_answer(const SymMatrix& q, const CoppOracleConfig& cfg,
                                double target_eps, RngStream& rng) {
  if (q.is_zero()) {
    // every simplex point is optimal with value zero
    OracleAnswer ans{SimplexPoint::barycenter(q.order()), 0.0, 0, false};
    return ans;
  }
  switch (cfg.method) {
    case StqpMethod::Exact: {
      StqpResult res = stqp_exact(q, cfg.exact_cap);
      return OracleAnswer{res.minimizer, -res.value, res.evaluations, false};
    }
    case StqpMethod::Grid: {
      StqpResult res = [&] {
        try {
          return stqp_grid(q, target_eps, cfg.grid_eval_budget);
        } catch (const GridTooLargeError&) {
          // grid blew past the budget; fall back to sampling it
          return stqp_grid_sample(q, target_eps, cfg.phi.value_or(0.05),
                                  cfg.sample_fraction.value_or(1.0), rng,
                                  cfg.grid_sample_abs_cap);
        }
      }();
      const bool probabilistic = res.method == StqpMethod::GridSample;
      return OracleAnswer{res.minimizer, -res.value, res.evaluations, probabilistic};
    }
    case StqpMethod::SimplexSample: {
      const double upper = std::sqrt(2.0) * lipschitz_K(q);
      StqpResult res = stqp_simplex_sample(q, std::min(target_eps, upper),
                                           cfg.phi.value_or(0.05), rng, cfg.sample_cap);
      return OracleAnswer{res.minimizer, -res.value, res.evaluations, true};
    }
    default: {
      StqpResult res = stqp_grid_sample(q, target_eps, cfg.phi.value_or(0.05),
                                        cfg.sample_fraction.value_or(1.0), rng,
                                        cfg.grid_sample_abs_cap);
      return OracleAnswer{res.minimizer, -res.value, res.evaluations, true};
    }
  }
}

SipProblem build_sip(const CoppInstance& instance, const CoppOracleConfig& oracle,
                     double epsilon, RngStream& rng) {
  instance.validate();
  oracle.validate();
  if (!(epsilon > 0.0)) throw EpsilonRangeError("build_sip: epsilon must be positive");
  if (oracle.method == StqpMethod::Exact && instance.n > oracle.exact_cap)
    throw ExactSolverCapError("build_sip: exact oracle on order above cap");

  // target accuracy of the inexact oracle per call
  const double target = oracle.method == StqpMethod::Exact ? 0.0 : oracle.alpha * epsilon;

  SipProblem p;
  p.L = estimate_L(instance);
  p.objective_value = [c = instance.c](const Vec& x) { return dot(c, x); };
  p.objective_subgradient = [c = instance.c](const Vec&) { return c; };
  p.constraint_value = [instance](const Vec& x, const SimplexPoint& d) {
    return copp_constraint_value(instance, x, d);
  };
  p.constraint_subgradient = [instance](const Vec& x, const SimplexPoint& d) {
    return copp_constraint_subgradient(instance, x, d);
  };
  p.projection = [fs = instance.feasible_set](const Vec& x) { return fs.project(x); };
  p.index_oracle = [instance, oracle, target, &rng](const Vec& x) {
    const SymMatrix q = slack_matrix(instance, x);
    return stqp_oracle_answer(q, oracle, target, rng);
  };
  p.audit_oracle = [instance, oracle, epsilon, &rng](const Vec& x) -> std::optional<double> {
    const SymMatrix q = slack_matrix(instance, x);
    if (q.is_zero()) return 0.0;
    try {
      if (instance.n <= oracle.exact_cap) return -stqp_exact(q, oracle.exact_cap).value;
      return -stqp_grid(q, epsilon / 10.0, oracle.grid_eval_budget).value;
    } catch (const Error&) {
      return std::nullopt;  // audit is best effort
    }
  };
  return p;
}

}  // namespace coposolve
