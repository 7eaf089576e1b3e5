#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coposolve/instance.hpp"

namespace coposolve {

enum class Branch { Objective, Constraint };
enum class Termination { IterationCap, TimeCap, CertificateFound };

const char* to_string(Branch b);
const char* to_string(Termination t);

struct IterationRecord {
  std::int64_t k = 0;
  Branch branch = Branch::Objective;
  double g_value = 0.0;
  double f_value = 0.0;
  std::int64_t subproblem_evals = 0;
  double elapsed = 0.0;  // seconds spent on this iteration
};

/// Per-iteration log of a solver run plus the selected output iterate:
/// k_star minimizes f over the iterations whose measured violation was
/// within tolerance (smallest index on ties).
struct RunReport {
  std::vector<IterationRecord> iterations;
  std::optional<std::int64_t> k_star;
  std::optional<double> f_at_kstar;
  std::optional<double> G_check;  // post-run audit of the constraint at k_star
  Termination terminated_by = Termination::IterationCap;
  double epsilon = 0.0;
  bool probabilistic = false;   // some oracle call carried only a probabilistic accuracy contract
  bool x1_projected = false;    // initial point was repaired onto the feasible set

  std::string to_json(const Vec* solution = nullptr) const;
};

}  // namespace coposolve
