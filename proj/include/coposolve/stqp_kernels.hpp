#pragma once

#include <cstdint>
#include <vector>

#include "coposolve/matrix.hpp"
#include "coposolve/simplex.hpp"

namespace coposolve {

/// Winner of an argmin scan: the value and the 0-based position in the
/// fixed enumeration (grid rank or draw index). Merging two results keeps
/// the smaller value, breaking exact ties toward the smaller index, which
/// reproduces the sequential first-wins rule under any partition.
struct ArgminResult {
  double value = 0.0;
  std::int64_t index = -1;

  void absorb(double v, std::int64_t i) {
    if (index < 0 || v < value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
  void absorb(const ArgminResult& other) {
    if (other.index >= 0) absorb(other.value, other.index);
  }
};

/// delta^T Q delta for a grid composition, summing only over the support;
/// the support of a grid point has at most min(n, r) entries.
double grid_point_value(const SymMatrix& q, const std::vector<std::int64_t>& comp, int r);

/// Scans all binom(n+r-1, r) grid points in enumeration order.
/// Serial reference implementation.
ArgminResult grid_argmin_serial(const SymMatrix& q, int r, std::int64_t total);

/// Same scan split over OpenMP threads by rank blocks. Returns the result
/// the serial scan would return, bit for bit.
ArgminResult grid_argmin_parallel(const SymMatrix& q, int r, std::int64_t total);

/// delta^T Q delta for a dense point stored at `coords` (length n).
double point_value(const SymMatrix& q, const double* coords);

/// Argmin over `count` points packed row-major in `pts` (count x n),
/// indices offset by `base` so chunked scans keep global draw order.
ArgminResult points_argmin_serial(const SymMatrix& q, const std::vector<double>& pts,
                                  std::int64_t count, std::int64_t base);
ArgminResult points_argmin_parallel(const SymMatrix& q, const std::vector<double>& pts,
                                    std::int64_t count, std::int64_t base);

}  // namespace coposolve
