#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "coposolve/instance.hpp"
#include "coposolve/report.hpp"
#include "coposolve/simplex.hpp"

namespace coposolve {

/// What the index oracle reports for one iterate: a constraint index
/// approximately maximizing the violation, the violation value there,
/// and how many subproblem evaluations it spent.
struct OracleAnswer {
  SimplexPoint delta;
  double g_value = 0.0;
  std::int64_t evaluations = 0;
  bool probabilistic = false;  // accuracy contract held only with some probability
};

/// Convex program with a single semi-infinite constraint indexed by the
/// simplex, posed over flat coordinate vectors. L bounds the norm of every
/// objective and constraint subgradient on the feasible set.
struct SipProblem {
  std::function<double(const Vec&)> objective_value;
  std::function<Vec(const Vec&)> objective_subgradient;
  std::function<double(const Vec&, const SimplexPoint&)> constraint_value;
  std::function<Vec(const Vec&, const SimplexPoint&)> constraint_subgradient;
  std::function<OracleAnswer(const Vec&)> index_oracle;
  std::function<Vec(const Vec&)> projection;
  double L = 1.0;

  /// Optional high-accuracy re-evaluation of the worst violation, used to
  /// audit the chosen iterate after a run. Best effort; may be absent.
  std::function<std::optional<double>(const Vec&)> audit_oracle;
};

struct SipConfig {
  double epsilon = 0.1;
  double alpha = 0.0;
  std::int64_t max_iterations = 1000;
  std::optional<double> time_cap_seconds;
  /// Stops the run with CertificateFound when it returns true; receives
  /// (k, x_k, g_k, f_k) before the step is taken.
  std::function<bool(std::int64_t, const Vec&, double, double)> early_exit;
  /// Test hook invoked once per iteration with the record, the iterate,
  /// and the next iterate after the step.
  std::function<void(const IterationRecord&, const Vec&, const Vec&)> observer;
};

struct SipOutcome {
  RunReport report;
  std::optional<Vec> best_point;            // iterate at k_star, when one exists
  std::optional<SimplexPoint> best_delta;   // oracle index reported at k_star
};

/// Iterations guaranteeing a within-epsilon output: ceil(L^2 d^2 / eps^2),
/// at least 1, where d bounds the distance from x1 to the optimal set.
std::int64_t iteration_bound(double L, double dist_bound, double epsilon);

/// One projected subgradient step: P_S(x - (numerator/|d|^2) d). The
/// numerator is epsilon on the objective branch and the measured violation
/// on the constraint branch.
Vec subgradient_step(const Vec& x, const Vec& d, double step_numerator,
                     const std::function<Vec(const Vec&)>& project);

/// Runs the two-branch projected subgradient method: each iteration asks
/// the oracle for the worst constraint index; violations above epsilon
/// trigger a feasibility step, otherwise an objective step of length
/// epsilon/|d| is taken. Tracks the best objective value among iterations
/// whose measured violation was within epsilon.
SipOutcome run(const SipProblem& problem, const Vec& x1, const SipConfig& config);

enum class CheckStatus { Pass, Fail, Inconclusive };

struct CheckResult {
  CheckStatus status = CheckStatus::Inconclusive;
  double objective_margin = 0.0;   // (f_star_bound + eps) - f(x_{k*})
  double constraint_margin = 0.0;  // (1+alpha) eps - G_check
  std::string detail;
};

/// Verifies the convergence guarantee on a finished run: the output
/// iterate must satisfy f <= f_star_bound + eps and its audited violation
/// must be at most (1+alpha) eps. Inconclusive when the run produced no
/// in-tolerance iterate or carries no audit value.
CheckResult theorem_check(const RunReport& report, double f_star_bound, double epsilon,
                          double alpha);

}  // namespace coposolve
