#pragma once

#include <optional>
#include <string>

#include "coposolve/copositive.hpp"
#include "coposolve/matrix.hpp"
#include "coposolve/rng.hpp"

namespace coposolve {

/// Parameters of the complete-positivity test. The tolerance of the
/// underlying run is epsilon = 1 / (t n (1+alpha)); t > 1 keeps it below
/// the 1 / (n (1+alpha)) threshold required for the certificate condition
/// to be reachable at all.
struct CpTestConfig {
  double t = 55.0;
  double alpha = 0.0;
  CoppOracleConfig oracle;
  std::optional<double> time_cap_seconds;

  /// t = 55 for orders up to 6, 15 above; alpha matched to the oracle.
  static CpTestConfig defaults_for(int n);

  void validate() const;
};

enum class CpStatus { NotCompletelyPositive, Inconclusive };

const char* to_string(CpStatus s);

/// Outcome of a test run. NotCompletelyPositive is a proof; Inconclusive
/// says nothing about the input either way.
struct CpVerdict {
  CpStatus verdict = CpStatus::Inconclusive;
  std::optional<SymMatrix> certificate;           // near-copositive separator X
  std::optional<SimplexPoint> certificate_delta;  // index witnessing g(X; delta) <= eps
  std::optional<SymMatrix> separating_copositive; // certificate shifted into the cone
  double objective = 0.0;                         // <C, X> at the certificate, normalized C
  double epsilon_used = 0.0;
  std::int64_t iterations_used = 0;
  bool found_in_tolerance_iterate = false;        // some iteration had g <= epsilon
  std::optional<bool> exact_separation;
  Termination terminated_by = Termination::IterationCap;

  std::string to_json(int n, const CpTestConfig& config) const;
};

/// C / |C|_F. The zero matrix is rejected.
SymMatrix normalize_input(const SymMatrix& c);

/// Projection onto the Frobenius ball of the given radius centered at O.
SymMatrix ball_projection(const SymMatrix& x, double radius);

/// -delta delta^T, the constraint subgradient in X; Frobenius norm at
/// most 1 for any simplex point.
SymMatrix cp_constraint_subgradient(const SimplexPoint& delta);

/// Tests whether C can be written as a sum of outer products of
/// nonnegative vectors. Minimizes <C/|C|_F, X> over near-copositive X in
/// the unit ball from X = O; an in-tolerance iterate with objective below
/// -n(1+alpha) epsilon proves the answer is no, and the run stops as soon
/// as one appears. A CP input can only come back Inconclusive.
CpVerdict test_cp(const SymMatrix& c, const CpTestConfig& config, RngStream& rng);

}  // namespace coposolve
