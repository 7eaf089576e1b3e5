#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "coposolve/instance.hpp"
#include "coposolve/rng.hpp"
#include "coposolve/sip.hpp"
#include "coposolve/stqp.hpp"

namespace coposolve {

/// Choice and tuning of the per-iteration subproblem solver. Exact solves
/// carry alpha = 0 semantics; inexact solvers target a per-call slack of
/// alpha * epsilon and therefore need alpha > 0.
struct CoppOracleConfig {
  StqpMethod method = StqpMethod::Exact;
  double alpha = 0.0;
  std::optional<double> phi;              // sampling methods
  std::optional<double> sample_fraction;  // grid sampling
  int exact_cap = kExactDefaultCap;
  std::int64_t grid_eval_budget = kGridEvalBudget;
  std::int64_t sample_cap = kSampleDefaultCap;
  std::int64_t grid_sample_abs_cap = 100'000;

  void validate() const;
};

/// Runs the configured subproblem solver on Q at the given target
/// accuracy and reports the violation maximizer: the returned g equals
/// -(value of the best point found). A zero matrix short-circuits to
/// value 0 at the barycenter. Sampling methods have their target clamped
/// into the admissible range, which only tightens it.
OracleAnswer stqp_oracle_answer(const SymMatrix& q, const CoppOracleConfig& cfg,
                                double target_eps, RngStream& rng);

/// A_0 + sum_i x_i A_i.
SymMatrix slack_matrix(const CoppInstance& instance, const Vec& x);

/// g(x; delta) = -delta^T (A_0 + sum_i x_i A_i) delta; nonpositive for
/// every simplex point exactly when the slack matrix is copositive.
double copp_constraint_value(const CoppInstance& instance, const Vec& x,
                             const SimplexPoint& delta);

/// Gradient of g in x: components -delta^T A_i delta.
Vec copp_constraint_subgradient(const CoppInstance& instance, const Vec& x,
                                const SimplexPoint& delta);

/// Subgradient-norm bound max{ |c|_2, sqrt(sum_i (max_kl |(A_i)_kl|)^2) }.
double estimate_L(const CoppInstance& instance);

/// Assembles the semi-infinite form of the instance: the index oracle
/// forms the slack matrix at x and runs the configured subproblem solver
/// at accuracy alpha * epsilon, returning the candidate index and the
/// violation there. The audit oracle re-solves at higher accuracy where
/// affordable. The rng is shared by reference across oracle calls and
/// must outlive the returned problem.
SipProblem build_sip(const CoppInstance& instance, const CoppOracleConfig& oracle,
                     double epsilon, RngStream& rng);

}  // namespace coposolve
