#include "coposolve/stqp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "coposolve/stqp_kernels.hpp"

namespace coposolve {

const char* to_string(StqpMethod m) {
  switch (m) {
    case StqpMethod::Exact: return "exact";
    case StqpMethod::Grid: return "grid";
    case StqpMethod::SimplexSample: return "simplex-sample";
    default: return "grid-sample";
  }
}

std::optional<StqpMethod> stqp_method_from_string(const std::string& s) {
  if (s == "exact") return StqpMethod::Exact;
  if (s == "grid") return StqpMethod::Grid;
  if (s == "simplex-sample") return StqpMethod::SimplexSample;
  if (s == "grid-sample") return StqpMethod::GridSample;
  return std::nullopt;
}

double lower_bound_gamma(const SymMatrix& q) {
  const int n = q.order();
  double qmin = q(0, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) qmin = std::min(qmin, q(i, j));
  // sum of 1/(Q_kk - qmin); any zero denominator makes the sum infinite
  // and the correction term vanish
  double denom_sum = 0.0;
  bool infinite = false;
  for (int k = 0; k < n; ++k) {
    const double gap = q(k, k) - qmin;
    if (gap == 0.0) {
      infinite = true;
      break;
    }
    denom_sum += 1.0 / gap;
  }
  return infinite ? qmin : qmin + 1.0 / denom_sum;
}

double lipschitz_K(const SymMatrix& q) {
  if (q.is_zero()) throw ZeroMatrixError("lipschitz_K: zero matrix");
  const int n = q.order();
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double col = 0.0;
    for (int k = 0; k < n; ++k) col += q(k, i) * q(k, i);
    best = std::max(best, col);
  }
  return 2.0 * std::sqrt(best);
}

namespace {

struct Candidate {
  double value = 0.0;
  std::vector<double> coords;  // full-dimension simplex coordinates
  std::int64_t order = -1;     // visit counter, for first-wins ties
  bool valid = false;
};

void absorb_candidate(Candidate& best, double value, std::vector<double> coords,
                      std::int64_t order) {
  if (!best.valid || value < best.value || (value == best.value && order < best.order)) {
    best.value = value;
    best.coords = std::move(coords);
    best.order = order;
    best.valid = true;
  }
}

constexpr double kClipTolerance = 1e-12;

/// Stationary point of min delta^T Q delta over the affine hull of the
/// face with the given support: solve [2 Q_S, 1; 1^T, 0] [delta; mu] = [0; 1]
/// by complete orthogonal decomposition, which yields the least-norm
/// least-squares solution when the system is singular. Returns false when
/// the candidate has a coordinate below the clip tolerance.
bool face_stationary_point(const SymMatrix& q, const std::vector<int>& support,
                           std::vector<double>& out, double& value) {
  const int k = static_cast<int>(support.size());
  Eigen::MatrixXd kkt(k + 1, k + 1);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) kkt(a, b) = 2.0 * q(support[a], support[b]);
    kkt(a, k) = 1.0;
    kkt(k, a) = 1.0;
  }
  kkt(k, k) = 0.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;
  Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);

  double sum = 0.0;
  for (int a = 0; a < k; ++a) {
    double v = sol(a);
    if (v < -kClipTolerance) return false;
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (sum <= 1e-9) return false;
  out.assign(q.order(), 0.0);
  for (int a = 0; a < k; ++a) out[support[a]] = std::max(sol(a), 0.0) / sum;
  // evaluate on the support only
  double diag = 0.0, upper = 0.0;
  for (int a = 0; a < k; ++a) {
    const int i = support[a];
    diag += q(i, i) * out[i] * out[i];
    for (int b = a + 1; b < k; ++b) {
      const int j = support[b];
      upper += q(i, j) * out[i] * out[j];
    }
  }
  value = diag + 2.0 * upper;
  return true;
}

/// Tests whether Q restricted to the support is positive semidefinite on
/// the sum-zero subspace, via the reduced matrix
/// R_ab = Q(sa,sb) - Q(sa,sk) - Q(sk,sb) + Q(sk,sk) with sk the last
/// support element. A face failing this cannot contain an interior local
/// minimizer, nor can any superset face.
bool face_second_order_ok(const SymMatrix& q, const std::vector<int>& support, double tol) {
  const int k = static_cast<int>(support.size());
  if (k <= 1) return true;
  const int last = support[k - 1];
  Eigen::MatrixXd reduced(k - 1, k - 1);
  for (int a = 0; a + 1 < k; ++a)
    for (int b = 0; b + 1 < k; ++b)
      reduced(a, b) =
          q(support[a], support[b]) - q(support[a], last) - q(last, support[b]) + q(last, last);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -tol;
}

struct ExactSearch {
  const SymMatrix& q;
  double psd_tol;
  std::int64_t nodes = 0;
  std::int64_t evals = 0;
  std::int64_t counter = 0;
  Candidate best;
  std::vector<int> support;

  explicit ExactSearch(const SymMatrix& m)
      : q(m), psd_tol(1e-9 * std::max(1.0, m.max_abs_entry())) {}

  void visit() {
    ++nodes;
    if (nodes > kExactNodeBudget)
      throw ExactSolverCapError("stqp_exact: node budget exceeded");
    const std::int64_t order = counter++;
    if (support.size() == 1) {
      const int i = support[0];
      std::vector<double> coords(q.order(), 0.0);
      coords[i] = 1.0;
      ++evals;
      absorb_candidate(best, q(i, i), std::move(coords), order);
      return;
    }
    std::vector<double> coords;
    double value = 0.0;
    if (face_stationary_point(q, support, coords, value)) {
      ++evals;
      absorb_candidate(best, value, std::move(coords), order);
    }
  }

  void dfs(int next_start) {
    visit();
    for (int j = next_start; j < q.order(); ++j) {
      support.push_back(j);
      if (face_second_order_ok(q, support, psd_tol))
        dfs(j + 1);
      else
        ++nodes;  // counted, candidate skipped, subtree skipped
      support.pop_back();
    }
  }
};

StqpResult finish_exact(const Candidate& best, std::int64_t evals) {
  StqpResult res{SimplexPoint(best.coords), best.value, StqpMethod::Exact, evals,
                 std::nullopt, std::nullopt, false};
  return res;
}

}  // namespace

StqpResult stqp_exact(const SymMatrix& q, int n_cap) {
  const int n = q.order();
  if (n > n_cap) throw ExactSolverCapError("stqp_exact: order exceeds cap");
  ExactSearch search(q);
  for (int i = 0; i < n; ++i) {
    search.support.assign(1, i);
    search.dfs(i + 1);
  }
  return finish_exact(search.best, search.evals);
}

StqpResult stqp_exact_reference(const SymMatrix& q, int n_cap) {
  const int n = q.order();
  if (n > n_cap) throw ExactSolverCapError("stqp_exact_reference: order exceeds cap");
  Candidate best;
  std::int64_t evals = 0;
  std::vector<int> support;
  const std::uint64_t masks = (1ULL << n);
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    support.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (1ULL << i)) support.push_back(i);
    const std::int64_t order = static_cast<std::int64_t>(mask);
    if (support.size() == 1) {
      std::vector<double> coords(n, 0.0);
      coords[support[0]] = 1.0;
      ++evals;
      absorb_candidate(best, q(support[0], support[0]), std::move(coords), order);
      continue;
    }
    std::vector<double> coords;
    double value = 0.0;
    if (face_stationary_point(q, support, coords, value)) {
      ++evals;
      absorb_candidate(best, value, std::move(coords), order);
    }
  }
  StqpResult res = finish_exact(best, evals);
  return res;
}

void export_milp(const SymMatrix& q, const std::string& path) {
  const int n = q.order();
  const double gamma_lb = lower_bound_gamma(q);
  std::ofstream out(path);
  if (!out) throw IoError("export_milp: cannot write " + path);
  char buf[40];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "\\ StQP mixed-integer reformulation, order n = " << n << "\n";
  out << "Minimize\n obj: v\n";
  out << "Subject To\n";
  int cid = 0;
  // row constraints: e_j^T Q d <= v + z_j
  for (int j = 0; j < n; ++j) {
    out << " c" << ++cid << ":";
    for (int i = 0; i < n; ++i) {
      const double coeff = q(j, i);
      out << (coeff < 0 ? " - " : " + ") << num(std::fabs(coeff)) << " d" << (i + 1);
    }
    out << " - v - z" << (j + 1) << " <= 0\n";
  }
  out << " c" << ++cid << ":";
  for (int i = 0; i < n; ++i) out << (i ? " + d" : " d") << (i + 1);
  out << " = 1\n";
  for (int j = 0; j < n; ++j)
    out << " c" << ++cid << ": d" << (j + 1) << " - y" << (j + 1) << " <= 0\n";
  for (int j = 0; j < n; ++j) {
    double col_max = q(0, j);
    for (int i = 1; i < n; ++i) col_max = std::max(col_max, q(i, j));
    const double big_m = col_max - gamma_lb;
    out << " c" << ++cid << ": z" << (j + 1) << " + " << num(big_m) << " y" << (j + 1)
        << " <= " << num(big_m) << "\n";
  }
  out << "Bounds\n v free\n";
  out << "Binary\n";
  for (int j = 0; j < n; ++j) out << " y" << (j + 1);
  out << "\nEnd\n";
  if (!out) throw IoError("export_milp: write failed for " + path);
}

int grid_resolution_for(const SymMatrix& q, double epsilon) {
  if (!(epsilon > 0.0)) throw EpsilonRangeError("grid_resolution_for: epsilon must be positive");
  const double numer = q.max_diagonal() - lower_bound_gamma(q);
  if (numer <= 0.0) return 1;
  const double raw = numer / epsilon;
  if (raw >= static_cast<double>(std::numeric_limits<int>::max()))
    throw GridTooLargeError("grid_resolution_for: resolution overflows int");
  return std::max(1, static_cast<int>(std::ceil(raw)));
}

StqpResult stqp_grid(const SymMatrix& q, double epsilon, std::int64_t eval_budget) {
  const int n = q.order();
  const int r = grid_resolution_for(q, epsilon);
  const auto total = binom_checked(n + static_cast<std::int64_t>(r) - 1, r);
  if (!total) throw GridTooLargeError("stqp_grid: grid size overflows int64");
  if (*total > eval_budget)
    throw GridTooLargeError("stqp_grid: grid size exceeds evaluation budget");
  const ArgminResult win = grid_argmin_parallel(q, r, *total);
  const GridPoint pt(r, composition_at_rank(n, r, win.index));
  StqpResult res{pt.to_simplex(), win.value, StqpMethod::Grid, *total, r, std::nullopt, false};
  return res;
}

std::int64_t sample_count(double rho, double phi) {
  if (!(phi > 0.0 && phi < 1.0)) throw EpsilonRangeError("sample_count: phi must lie in (0,1)");
  if (rho >= 1.0) return 1;
  if (!(rho > 0.0)) throw EpsilonRangeError("sample_count: rho must lie in (0,1)");
  const double raw = std::log(phi) / std::log1p(-rho);
  if (!(raw < 9.0e18)) return std::numeric_limits<std::int64_t>::max();
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw)));
}

SimplexPoint sample_simplex_uniform(int n, RngStream& rng) {
  if (n < 1) throw DimensionError("sample_simplex_uniform: n must be >= 1");
  std::vector<double> c(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    c[i] = rng.exponential();
    sum += c[i];
  }
  for (double& v : c) v /= sum;
  return SimplexPoint(std::move(c));
}

namespace {

constexpr std::int64_t kSampleChunk = 8192;

template <typename DrawFn>
StqpResult scan_samples(const SymMatrix& q, std::int64_t M, DrawFn&& draw, StqpMethod method) {
  const int n = q.order();
  std::vector<double> chunk;
  chunk.reserve(static_cast<std::size_t>(std::min<std::int64_t>(M, kSampleChunk)) * n);
  ArgminResult best;
  std::vector<double> best_coords;
  std::int64_t base = 0;
  std::vector<double> point(n);
  while (base < M) {
    const std::int64_t count = std::min(kSampleChunk, M - base);
    chunk.clear();
    for (std::int64_t i = 0; i < count; ++i) {
      draw(point);
      chunk.insert(chunk.end(), point.begin(), point.end());
    }
    const ArgminResult local = points_argmin_parallel(q, chunk, count, base);
    if (local.index >= 0 &&
        (best.index < 0 || local.value < best.value ||
         (local.value == best.value && local.index < best.index))) {
      best = local;
      const std::int64_t offset = (local.index - base) * n;
      best_coords.assign(chunk.begin() + offset, chunk.begin() + offset + n);
    }
    base += count;
  }
  StqpResult res{SimplexPoint(std::move(best_coords)), best.value, method, M,
                 std::nullopt, M, false};
  return res;
}

}  // namespace

SamplePlan simplex_sample_plan(const SymMatrix& q, double epsilon, double phi) {
  const double upper = std::sqrt(2.0) * lipschitz_K(q);
  if (!(epsilon > 0.0) || epsilon > upper)
    throw EpsilonRangeError("simplex sampler: epsilon must lie in (0, sqrt(2) K(Q)]");
  if (!(phi > 0.0 && phi < 1.0))
    throw EpsilonRangeError("simplex sampler: phi must lie in (0,1)");
  const double rho = std::pow(epsilon / upper, q.order() - 1);
  return SamplePlan{epsilon, phi, sample_count(rho, phi), std::nullopt};
}

SamplePlan grid_sample_plan(const SymMatrix& q, double epsilon, double phi,
                            double sample_fraction) {
  if (!(phi > 0.0 && phi < 1.0))
    throw EpsilonRangeError("grid sampler: phi must lie in (0,1)");
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
    throw EpsilonRangeError("grid sampler: sample_fraction must lie in (0,1]");
  const int r = grid_resolution_for(q, epsilon);
  const auto total = binom_checked(q.order() + static_cast<std::int64_t>(r) - 1, r);
  if (!total)
    return SamplePlan{epsilon, phi, std::numeric_limits<std::int64_t>::max(), r};
  const double rho = static_cast<double>(q.order()) / static_cast<double>(*total);
  const std::int64_t m_coverage = sample_count(std::min(rho, 1.0), phi);
  const std::int64_t m_fraction = static_cast<std::int64_t>(
      std::min(std::ceil(sample_fraction * static_cast<double>(*total)),
               static_cast<double>(std::numeric_limits<std::int64_t>::max())));
  return SamplePlan{epsilon, phi, std::max<std::int64_t>(1, std::min(m_coverage, m_fraction)),
                    r};
}

StqpResult stqp_simplex_sample(const SymMatrix& q, double epsilon, double phi, RngStream& rng,
                               std::int64_t m_cap) {
  const SamplePlan plan = simplex_sample_plan(q, epsilon, phi);
  std::int64_t M = plan.M;
  bool clamped = false;
  if (M > m_cap) {
    M = m_cap;
    clamped = true;
  }
  StqpResult res =
      scan_samples(q, M, [&](std::vector<double>& p) {
        double sum = 0.0;
        for (double& v : p) {
          v = rng.exponential();
          sum += v;
        }
        for (double& v : p) v /= sum;
      }, StqpMethod::SimplexSample);
  res.clamped = clamped;
  return res;
}

GridPoint sample_grid_uniform(int n, int r, RngStream& rng) {
  if (n < 1 || r < 1) throw Error("sample_grid_uniform: n, r must be >= 1");
  if (n == 1) return GridPoint(r, {r});
  // random (n-1)-subset of {1, ..., n+r-1} as separator positions
  const std::int64_t slots = static_cast<std::int64_t>(n) + r - 1;
  std::vector<std::int64_t> pool(slots);
  for (std::int64_t i = 0; i < slots; ++i) pool[i] = i + 1;
  for (int i = 0; i < n - 1; ++i) {
    const std::int64_t j = i + static_cast<std::int64_t>(rng.below(slots - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::int64_t> sep(pool.begin(), pool.begin() + (n - 1));
  std::sort(sep.begin(), sep.end());
  std::vector<std::int64_t> numerators(n);
  numerators[0] = sep[0] - 1;
  for (int i = 1; i < n - 1; ++i) numerators[i] = sep[i] - sep[i - 1] - 1;
  numerators[n - 1] = slots - sep[n - 2];
  return GridPoint(r, std::move(numerators));
}

std::set<GridPoint> grid_neighborhood(const GridPoint& delta) {
  // squared numerator distance <= 2 forces the difference vector to be
  // zero or a single unit transfer between two coordinates
  std::set<GridPoint> out;
  out.insert(delta);
  const int n = delta.dim();
  const int r = delta.resolution();
  for (int i = 0; i < n; ++i) {
    if (delta.numerator(i) < 1) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<std::int64_t> moved = delta.numerators();
      moved[i] -= 1;
      moved[j] += 1;
      out.insert(GridPoint(r, std::move(moved)));
    }
  }
  return out;
}

double grid_sample_bound(const SymMatrix& q, int r) {
  return (std::sqrt(2.0) * lipschitz_K(q) + q.max_diagonal() - lower_bound_gamma(q)) / r;
}

StqpResult stqp_grid_sample(const SymMatrix& q, double epsilon, double phi,
                            double sample_fraction, RngStream& rng, std::int64_t m_abs_cap) {
  const int n = q.order();
  const SamplePlan plan = grid_sample_plan(q, epsilon, phi, sample_fraction);
  const int r = *plan.r;
  const auto total = binom_checked(n + static_cast<std::int64_t>(r) - 1, r);
  std::int64_t M = plan.M;
  bool clamped = false;
  if (total) {
    if (M >= *total) {
      // sampling the full grid adds nothing over scanning it
      const ArgminResult win = grid_argmin_parallel(q, r, *total);
      const GridPoint pt(r, composition_at_rank(n, r, win.index));
      StqpResult res{pt.to_simplex(), win.value, StqpMethod::GridSample, *total,
                     r, *total, false};
      return res;
    }
  } else {
    M = m_abs_cap;  // grid size overflowed; only the absolute cap applies
    clamped = true;
  }
  StqpResult res = scan_samples(q, M, [&](std::vector<double>& p) {
    const GridPoint g = sample_grid_uniform(n, r, rng);
    for (int i = 0; i < n; ++i)
      p[i] = static_cast<double>(g.numerator(i)) / static_cast<double>(r);
  }, StqpMethod::GridSample);
  res.r = r;
  res.clamped = clamped;
  return res;
}

}  // namespace coposolve
