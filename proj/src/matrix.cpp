#include "coposolve/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace coposolve {

SymMatrix::SymMatrix(int n) : n_(n) {
  if (n < 1) throw DimensionError("SymMatrix: order must be >= 1");
  a_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

SymMatrix SymMatrix::from_rows(int n, const std::vector<double>& rows) {
  if (n < 1) throw DimensionError("SymMatrix: order must be >= 1");
  if (rows.size() != static_cast<std::size_t>(n) * n)
    throw DimensionError("SymMatrix: row block size does not match order");
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = 0.5 * (rows[static_cast<std::size_t>(i) * n + j] +
                              rows[static_cast<std::size_t>(j) * n + i]);
      if (!std::isfinite(v)) throw FormatError("SymMatrix: non-finite entry");
      m.set(i, j, v);
    }
  }
  return m;
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

bool SymMatrix::is_zero() const {
  for (double v : a_)
    if (v != 0.0) return false;
  return true;
}

double SymMatrix::max_abs_entry() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

double SymMatrix::max_diagonal() const {
  double m = (*this)(0, 0);
  for (int i = 1; i < n_; ++i) m = std::max(m, (*this)(i, i));
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.n_ != n_) throw DimensionError("SymMatrix: order mismatch in +=");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

SymMatrix& SymMatrix::add_scaled(const SymMatrix& other, double factor) {
  if (other.n_ != n_) throw DimensionError("SymMatrix: order mismatch in add_scaled");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += factor * other.a_[i];
  return *this;
}

SymMatrix SymMatrix::scaled(double factor) const {
  SymMatrix out = *this;
  for (double& v : out.a_) v *= factor;
  return out;
}

double SymMatrix::max_asymmetry(int n, const std::vector<double>& rows) {
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m = std::max(m, std::fabs(rows[static_cast<std::size_t>(i) * n + j] -
                                rows[static_cast<std::size_t>(j) * n + i]));
  return m;
}

double frobenius_inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.order() != b.order()) throw DimensionError("frobenius_inner: order mismatch");
  const auto& x = a.data();
  const auto& y = b.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double frobenius_norm(const SymMatrix& a) { return std::sqrt(frobenius_inner(a, a)); }

SymMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file: " + path);
  int n = 0;
  if (!(in >> n) || n < 1) throw FormatError("matrix file: bad order line in " + path);
  std::vector<double> rows(static_cast<std::size_t>(n) * n);
  for (auto& v : rows) {
    if (!(in >> v)) throw FormatError("matrix file: truncated entries in " + path);
    if (!std::isfinite(v)) throw FormatError("matrix file: non-finite entry in " + path);
  }
  return SymMatrix::from_rows(n, rows);
}

void save_matrix(const SymMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write matrix file: " + path);
  const int n = m.order();
  out << n << "\n";
  char buf[40];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << buf << (j + 1 == n ? "" : " ");
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace coposolve
