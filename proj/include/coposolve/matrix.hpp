#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coposolve/errors.hpp"

namespace coposolve {

/// Dense real symmetric matrix. Entries are stored as a full row-major
/// n*n block; set() writes both (i,j) and (j,i), so symmetry holds exactly.
class SymMatrix {
public:
  SymMatrix() : n_(0) {}
  explicit SymMatrix(int n);

  /// Builds from a row-major n*n block, averaging a with its transpose.
  static SymMatrix from_rows(int n, const std::vector<double>& rows);

  static SymMatrix identity(int n);

  int order() const { return n_; }

  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
  }

  const std::vector<double>& data() const { return a_; }

  bool is_zero() const;
  double max_abs_entry() const;
  double max_diagonal() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& add_scaled(const SymMatrix& other, double factor);
  SymMatrix scaled(double factor) const;

  /// Largest |a_ij - a_ji| of a raw row-major block (pre-symmetrization check).
  static double max_asymmetry(int n, const std::vector<double>& rows);

private:
  int n_;
  std::vector<double> a_;
};

double frobenius_inner(const SymMatrix& a, const SymMatrix& b);
double frobenius_norm(const SymMatrix& a);

/// Plain-text matrix format: first line n, then n lines of n decimals.
/// Symmetrized on load; rejects non-finite entries.
SymMatrix load_matrix(const std::string& path);
void save_matrix(const SymMatrix& m, const std::string& path);

}  // namespace coposolve
