#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coposolve/errors.hpp"
#include "coposolve/matrix.hpp"

namespace coposolve {

/// Point of the standard simplex: nonnegative coordinates summing to one.
/// Construction clamps coordinates in [-1e-12, 0) to zero and renormalizes
/// the sum, so rebuilding an already-valid point moves no coordinate by
/// more than 1e-12.
class SimplexPoint {
public:
  static constexpr double kSumTolerance = 1e-12;

  explicit SimplexPoint(std::vector<double> coords);

  /// Uniform point (1/n, ..., 1/n).
  static SimplexPoint barycenter(int n);
  static SimplexPoint vertex(int n, int i);

  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[i]; }
  const std::vector<double>& coords() const { return c_; }

private:
  std::vector<double> c_;
};

/// Point of the regular grid of the simplex at resolution r, held as
/// integer numerators so neighborhood tests and enumeration stay exact.
class GridPoint {
public:
  GridPoint(int r, std::vector<std::int64_t> numerators);

  int dim() const { return static_cast<int>(num_.size()); }
  int resolution() const { return r_; }
  std::int64_t numerator(int i) const { return num_[i]; }
  const std::vector<std::int64_t>& numerators() const { return num_; }

  SimplexPoint to_simplex() const;

  bool operator==(const GridPoint& other) const {
    return r_ == other.r_ && num_ == other.num_;
  }
  bool operator<(const GridPoint& other) const { return num_ < other.num_; }

private:
  int r_;
  std::vector<std::int64_t> num_;
};

/// delta^T Q delta in O(n^2).
double quadratic_form(const SymMatrix& q, const SimplexPoint& d);

/// Binomial coefficient, nullopt when the value exceeds int64.
std::optional<std::int64_t> binom_checked(std::int64_t n, std::int64_t k);

/// Streams every composition of r into n nonnegative parts exactly once,
/// in lexicographically decreasing order: (r,0,...,0) first, (0,...,0,r)
/// last. Total count is binom(n+r-1, r).
class CompositionStream {
public:
  CompositionStream(int n, int r);

  /// Positions the stream at a given 0-based rank of the order above.
  CompositionStream(int n, int r, std::int64_t rank);

  const std::vector<std::int64_t>& current() const { return c_; }
  GridPoint current_point() const { return GridPoint(r_, c_); }

  /// Advances to the next composition; false once exhausted.
  bool next();

private:
  int n_;
  int r_;
  std::vector<std::int64_t> c_;
};

/// Composition of r into n parts at a 0-based rank of the stream order.
std::vector<std::int64_t> composition_at_rank(int n, int r, std::int64_t rank);

}  // namespace coposolve
