#include "coposolve/cptest.hpp"

#include <cmath>

#include "json.hpp"

namespace coposolve {

CpTestConfig CpTestConfig::defaults_for(int n) {
  CpTestConfig cfg;
  cfg.t = n <= 6 ? 55.0 : 15.0;
  return cfg;
}

void CpTestConfig::validate() const {
  if (!(t > 1.0)) throw ConfigError("cp test: t must exceed 1");
  if (alpha < 0.0) throw ConfigError("cp test: alpha must be nonnegative");
  oracle.validate();
  if (alpha != oracle.alpha) throw ConfigError("cp test: alpha must match the oracle's");
}

const char* to_string(CpStatus s) {
  return s == CpStatus::NotCompletelyPositive ? "not_completely_positive" : "inconclusive";
}

SymMatrix normalize_input(const SymMatrix& c) {
  if (c.is_zero()) throw ZeroMatrixError("normalize_input: zero matrix");
  return c.scaled(1.0 / frobenius_norm(c));
}

SymMatrix ball_projection(const SymMatrix& x, double radius) {
  if (!(radius > 0.0)) throw Error("ball_projection: radius must be positive");
  const double nrm = frobenius_norm(x);
  if (nrm <= radius) return x;
  return x.scaled(radius / nrm);
}

SymMatrix cp_constraint_subgradient(const SimplexPoint& delta) {
  const int n = delta.dim();
  SymMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g.set(i, j, -delta[i] * delta[j]);
  return g;
}

namespace {

SymMatrix unflatten(int n, const Vec& flat) {
  return SymMatrix::from_rows(n, flat);
}

}  // namespace

CpVerdict test_cp(const SymMatrix& c, const CpTestConfig& config, RngStream& rng) {
  config.validate();
  const int n = c.order();

  CpVerdict verdict;
  if (c.is_zero()) {
    // O is a sum of zero outer products; nothing to certify
    verdict.verdict = CpStatus::Inconclusive;
    return verdict;
  }

  const SymMatrix cn = normalize_input(c);
  const double one_plus_alpha = 1.0 + config.alpha;
  const double epsilon = 1.0 / (config.t * n * one_plus_alpha);
  const double threshold = -n * one_plus_alpha * epsilon;  // equals -1/t
  const std::int64_t N = static_cast<std::int64_t>(
      std::ceil(config.t * config.t * one_plus_alpha * one_plus_alpha *
                static_cast<double>(n) * static_cast<double>(n)));

  const Vec c_flat = cn.data();

  SipProblem p;
  p.L = 1.0;  // |C|_F = 1 and |delta delta^T|_F <= 1
  p.objective_value = [c_flat](const Vec& x) { return dot(c_flat, x); };
  p.objective_subgradient = [c_flat](const Vec&) { return c_flat; };
  p.constraint_value = [n](const Vec& x, const SimplexPoint& d) {
    return -quadratic_form(unflatten(n, x), d);
  };
  p.constraint_subgradient = [n](const Vec&, const SimplexPoint& d) {
    return cp_constraint_subgradient(d).data();
  };
  p.projection = [](const Vec& x) {
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm <= 1.0) return x;
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / nrm;
    return out;
  };
  p.index_oracle = [n, oracle = config.oracle, target = config.alpha * epsilon,
                    &rng](const Vec& x) {
    return stqp_oracle_answer(unflatten(n, x), oracle, target, rng);
  };
  p.audit_oracle = [n, cap = config.oracle.exact_cap](const Vec& x) -> std::optional<double> {
    const SymMatrix q = unflatten(n, x);
    if (q.is_zero()) return 0.0;
    if (n > cap) return std::nullopt;
    return -stqp_exact(q, cap).value;
  };

  SipConfig run_cfg;
  run_cfg.epsilon = epsilon;
  run_cfg.alpha = config.alpha;
  run_cfg.max_iterations = N;
  run_cfg.time_cap_seconds = config.time_cap_seconds;
  run_cfg.early_exit = [epsilon, threshold](std::int64_t, const Vec&, double g_k, double f_k) {
    return g_k <= epsilon && f_k < threshold;
  };

  const Vec x1(static_cast<std::size_t>(n) * n, 0.0);
  SipOutcome outcome = run(p, x1, run_cfg);

  verdict.epsilon_used = epsilon;
  verdict.iterations_used = static_cast<std::int64_t>(outcome.report.iterations.size());
  verdict.terminated_by = outcome.report.terminated_by;
  verdict.found_in_tolerance_iterate = outcome.report.k_star.has_value();

  if (outcome.best_point && outcome.report.f_at_kstar &&
      *outcome.report.f_at_kstar < threshold) {
    verdict.verdict = CpStatus::NotCompletelyPositive;
    verdict.objective = *outcome.report.f_at_kstar;
    SymMatrix cert = unflatten(n, *outcome.best_point);
    verdict.certificate = cert;
    verdict.certificate_delta = outcome.best_delta;
    if (n <= config.oracle.exact_cap) {
      // shift the certificate into the cone: adding s * (all-ones) raises
      // delta^T X delta by exactly s on the simplex
      const double gamma = stqp_exact(cert, config.oracle.exact_cap).value;
      SymMatrix shifted = cert;
      if (gamma < 0.0) {
        const double s = -gamma;
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) shifted.set(i, j, shifted(i, j) + s);
      }
      const double gamma_shifted = stqp_exact(shifted, config.oracle.exact_cap).value;
      const double obj_shifted = frobenius_inner(cn, shifted);
      verdict.separating_copositive = shifted;
      verdict.exact_separation = (gamma_shifted >= -1e-10 && obj_shifted < 0.0);
    }
  } else {
    verdict.verdict = CpStatus::Inconclusive;
    verdict.objective = outcome.report.f_at_kstar.value_or(0.0);
  }
  return verdict;
}

std::string CpVerdict::to_json(int n, const CpTestConfig& config) const {
  nlohmann::json j;
  j["verdict"] = to_string(verdict);
  j["objective"] = objective;
  j["epsilon"] = epsilon_used;
  j["n"] = n;
  j["t"] = config.t;
  j["alpha"] = config.alpha;
  j["iterations"] = iterations_used;
  j["terminated_by"] = coposolve::to_string(terminated_by);
  if (certificate) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < n; ++k) row.push_back((*certificate)(i, k));
      rows.push_back(row);
    }
    j["certificate"] = rows;
  }
  if (exact_separation) j["exact_separation"] = *exact_separation;
  return j.dump(2);
}

}  // namespace coposolve
