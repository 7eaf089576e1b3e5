#include "coposolve/stqp_kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>

namespace coposolve {

double grid_point_value(const SymMatrix& q, const std::vector<std::int64_t>& comp, int r) {
  const int n = static_cast<int>(comp.size());
  // support indices; everything else contributes zero
  int sup[64];
  int k = 0;
  for (int i = 0; i < n; ++i)
    if (comp[i] > 0) {
      if (k < 64) sup[k] = i;
      ++k;
    }
  const double inv_r2 = 1.0 / (static_cast<double>(r) * static_cast<double>(r));
  if (k <= 64) {
    double diag = 0.0, upper = 0.0;
    for (int a = 0; a < k; ++a) {
      const int i = sup[a];
      const double ci = static_cast<double>(comp[i]);
      diag += q(i, i) * ci * ci;
      for (int b = a + 1; b < k; ++b) {
        const int j = sup[b];
        upper += q(i, j) * ci * static_cast<double>(comp[j]);
      }
    }
    return (diag + 2.0 * upper) * inv_r2;
  }
  // wide support: plain dense double loop
  double diag = 0.0, upper = 0.0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] == 0) continue;
    const double ci = static_cast<double>(comp[i]);
    diag += q(i, i) * ci * ci;
    for (int j = i + 1; j < n; ++j)
      if (comp[j] > 0) upper += q(i, j) * ci * static_cast<double>(comp[j]);
  }
  return (diag + 2.0 * upper) * inv_r2;
}

namespace {

ArgminResult grid_scan_block(const SymMatrix& q, int r, std::int64_t begin, std::int64_t end) {
  ArgminResult best;
  if (begin >= end) return best;
  CompositionStream stream(q.order(), r, begin);
  for (std::int64_t rank = begin; rank < end; ++rank) {
    best.absorb(grid_point_value(q, stream.current(), r), rank);
    if (rank + 1 < end) stream.next();
  }
  return best;
}

}  // namespace

ArgminResult grid_argmin_serial(const SymMatrix& q, int r, std::int64_t total) {
  return grid_scan_block(q, r, 0, total);
}

ArgminResult grid_argmin_parallel(const SymMatrix& q, int r, std::int64_t total) {
#ifdef _OPENMP
  const int threads = std::max(1, omp_get_max_threads());
  if (threads == 1 || total < 4096) return grid_argmin_serial(q, r, total);
  std::vector<ArgminResult> partial(threads);
#pragma omp parallel num_threads(threads)
  {
    const int t = omp_get_thread_num();
    const std::int64_t chunk = (total + threads - 1) / threads;
    const std::int64_t begin = std::min<std::int64_t>(total, t * chunk);
    const std::int64_t end = std::min<std::int64_t>(total, begin + chunk);
    partial[t] = grid_scan_block(q, r, begin, end);
  }
  ArgminResult best;
  for (const auto& p : partial) best.absorb(p);
  return best;
#else
  return grid_argmin_serial(q, r, total);
#endif
}

double point_value(const SymMatrix& q, const double* coords) {
  const int n = q.order();
  double diag = 0.0, upper = 0.0;
  for (int i = 0; i < n; ++i) {
    diag += q(i, i) * coords[i] * coords[i];
    for (int j = i + 1; j < n; ++j) upper += q(i, j) * coords[i] * coords[j];
  }
  return diag + 2.0 * upper;
}

ArgminResult points_argmin_serial(const SymMatrix& q, const std::vector<double>& pts,
                                  std::int64_t count, std::int64_t base) {
  const int n = q.order();
  ArgminResult best;
  for (std::int64_t i = 0; i < count; ++i)
    best.absorb(point_value(q, pts.data() + i * n), base + i);
  return best;
}

ArgminResult points_argmin_parallel(const SymMatrix& q, const std::vector<double>& pts,
                                    std::int64_t count, std::int64_t base) {
#ifdef _OPENMP
  const int n = q.order();
  if (count < 2048) return points_argmin_serial(q, pts, count, base);
  ArgminResult best;
#pragma omp parallel
  {
    ArgminResult local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i)
      local.absorb(point_value(q, pts.data() + i * n), base + i);
#pragma omp critical
    best.absorb(local);
  }
  return best;
#else
  return points_argmin_serial(q, pts, count, base);
#endif
}

}  // namespace coposolve
