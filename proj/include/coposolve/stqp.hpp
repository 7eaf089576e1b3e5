#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coposolve/matrix.hpp"
#include "coposolve/rng.hpp"
#include "coposolve/simplex.hpp"

namespace coposolve {

enum class StqpMethod { Exact, Grid, SimplexSample, GridSample };

const char* to_string(StqpMethod m);
std::optional<StqpMethod> stqp_method_from_string(const std::string& s);

struct StqpResult {
  SimplexPoint minimizer;
  double value = 0.0;
  StqpMethod method = StqpMethod::Exact;
  std::int64_t evaluations = 0;
  std::optional<int> r;             // grid resolution, when a grid was involved
  std::optional<std::int64_t> M;    // sample count, for sampling methods
  bool clamped = false;             // M was cut down by a cap
};

/// Sampling budget derived from a target accuracy and a per-call failure
/// probability phi.
struct SamplePlan {
  double epsilon = 0.0;
  double phi = 0.0;
  std::int64_t M = 1;
  std::optional<int> r;
};

/// Closed-form lower bound on the simplex-constrained minimum of
/// delta^T Q delta:  min_ij Q_ij + 1 / sum_k 1/(Q_kk - min_ij Q_ij),
/// under the conventions 1/0 = inf, a + inf = inf, 1/inf = 0.
double lower_bound_gamma(const SymMatrix& q);

/// Lipschitz constant estimate for delta^T Q delta on the simplex:
/// twice the largest column 2-norm. Q must be nonzero.
double lipschitz_K(const SymMatrix& q);

inline constexpr int kExactDefaultCap = 22;
inline constexpr std::int64_t kExactNodeBudget = 50'000'000;

/// Global minimum of delta^T Q delta over the simplex by support
/// enumeration: each face contributes the stationary point of its
/// equality-constrained subproblem (least-norm solution when singular),
/// kept when its coordinates clear -1e-12, clipped and renormalized;
/// all vertices are always candidates. Faces whose principal submatrix
/// is not positive semidefinite on the sum-zero subspace cannot hold an
/// interior minimizer, and neither can any superset, so those subtrees
/// are skipped.
StqpResult stqp_exact(const SymMatrix& q, int n_cap = kExactDefaultCap);

/// Plain full-enumeration variant without subtree skipping; kept as the
/// reference the pruned solver is tested against. Practical for n <= 20.
StqpResult stqp_exact_reference(const SymMatrix& q, int n_cap = 20);

/// Writes the mixed-integer reformulation as a CPLEX-dialect LP file:
/// variables v, d1..dn, z1..zn, y1..yn; 3n+1 constraints. An external
/// solver's optimal v equals the simplex minimum of delta^T Q delta.
void export_milp(const SymMatrix& q, const std::string& path);

/// Smallest positive integer r with r >= (max_i Q_ii - lower bound)/epsilon;
/// 1 when that numerator is nonpositive.
int grid_resolution_for(const SymMatrix& q, double epsilon);

inline constexpr std::int64_t kGridEvalBudget = 10'000'000;

/// Exhaustive scan of the resolution-r grid with r chosen for the target
/// epsilon; the returned value is within epsilon of the true minimum.
StqpResult stqp_grid(const SymMatrix& q, double epsilon,
                     std::int64_t eval_budget = kGridEvalBudget);

/// ceil(log(phi) / log(1 - rho)), at least 1; saturates at int64 max.
std::int64_t sample_count(double rho, double phi);

/// Sample count the simplex sampler will use before capping.
SamplePlan simplex_sample_plan(const SymMatrix& q, double epsilon, double phi);

/// Sample count and resolution the grid sampler will use before capping;
/// M saturates at int64 max when the grid size overflows.
SamplePlan grid_sample_plan(const SymMatrix& q, double epsilon, double phi,
                            double sample_fraction);

/// Uniform (flat Dirichlet) draw from the simplex via normalized
/// standard-exponential coordinates.
SimplexPoint sample_simplex_uniform(int n, RngStream& rng);

inline constexpr std::int64_t kSampleDefaultCap = 10'000'000;

/// Samples M points uniformly from the simplex, M sized so the best value
/// is within epsilon of the minimum with probability at least 1 - phi
/// (when the cap did not bind). Requires 0 < epsilon <= sqrt(2) K(Q).
StqpResult stqp_simplex_sample(const SymMatrix& q, double epsilon, double phi,
                               RngStream& rng, std::int64_t m_cap = kSampleDefaultCap);

/// Uniform draw from the resolution-r grid via a random stars-and-bars
/// separator set.
GridPoint sample_grid_uniform(int n, int r, RngStream& rng);

/// Grid points within Euclidean distance sqrt(2)/r of delta, inclusive,
/// computed exactly on numerators: the point itself plus every single-step
/// move of one unit between two coordinates.
std::set<GridPoint> grid_neighborhood(const GridPoint& delta);

/// Samples from the resolution-r grid (r chosen for epsilon). The sample
/// count is the smaller of the coverage-based bound m(n/|grid|, phi) and
/// ceil(sample_fraction * |grid|); when the grid size overflows, the
/// absolute cap alone applies. When the count reaches the full grid size
/// the whole grid is scanned instead.
StqpResult stqp_grid_sample(const SymMatrix& q, double epsilon, double phi,
                            double sample_fraction, RngStream& rng,
                            std::int64_t m_abs_cap = 100'000);

/// Accuracy bound that holds with probability 1 - phi for the grid
/// sampler when the coverage-based count was used:
/// (1/r)(sqrt(2) K(Q) + max_i Q_ii - lower bound).
double grid_sample_bound(const SymMatrix& q, int r);

}  // namespace coposolve
