#include "coposolve/simplex.hpp"

#include <cmath>
#include <numeric>

namespace coposolve {

SimplexPoint::SimplexPoint(std::vector<double> coords) : c_(std::move(coords)) {
  if (c_.empty()) throw DimensionError("SimplexPoint: dimension must be >= 1");
  double sum = 0.0;
  for (double& v : c_) {
    if (!std::isfinite(v)) throw Error("SimplexPoint: non-finite coordinate");
    if (v < 0.0) {
      if (v < -kSumTolerance) throw Error("SimplexPoint: negative coordinate");
      v = 0.0;
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-6)
    throw Error("SimplexPoint: coordinates do not sum to 1");
  for (double& v : c_) v /= sum;
}

SimplexPoint SimplexPoint::barycenter(int n) {
  if (n < 1) throw DimensionError("barycenter: n must be >= 1");
  return SimplexPoint(std::vector<double>(n, 1.0 / n));
}

SimplexPoint SimplexPoint::vertex(int n, int i) {
  if (n < 1 || i < 0 || i >= n) throw DimensionError("vertex: bad index");
  std::vector<double> c(n, 0.0);
  c[i] = 1.0;
  return SimplexPoint(std::move(c));
}

GridPoint::GridPoint(int r, std::vector<std::int64_t> numerators)
    : r_(r), num_(std::move(numerators)) {
  if (r < 1) throw Error("GridPoint: resolution must be >= 1");
  if (num_.empty()) throw DimensionError("GridPoint: dimension must be >= 1");
  std::int64_t sum = 0;
  for (std::int64_t v : num_) {
    if (v < 0) throw Error("GridPoint: negative numerator");
    sum += v;
  }
  if (sum != r) throw Error("GridPoint: numerators must sum to the resolution");
}

SimplexPoint GridPoint::to_simplex() const {
  std::vector<double> c(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i)
    c[i] = static_cast<double>(num_[i]) / static_cast<double>(r_);
  return SimplexPoint(std::move(c));
}

double quadratic_form(const SymMatrix& q, const SimplexPoint& d) {
  const int n = q.order();
  if (n != d.dim()) throw DimensionError("quadratic_form: order mismatch");
  double diag = 0.0, upper = 0.0;
  for (int i = 0; i < n; ++i) {
    diag += q(i, i) * d[i] * d[i];
    for (int j = i + 1; j < n; ++j) upper += q(i, j) * d[i] * d[j];
  }
  return diag + 2.0 * upper;
}

std::optional<std::int64_t> binom_checked(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // result * (n-k+i) is always divisible by i at this step
    const __int128 wide = static_cast<__int128>(result) * (n - k + i);
    const __int128 q = wide / i;
    if (q > INT64_MAX) return std::nullopt;
    result = static_cast<std::int64_t>(q);
  }
  return result;
}

CompositionStream::CompositionStream(int n, int r) : n_(n), r_(r) {
  if (n < 1 || r < 1) throw Error("CompositionStream: n, r must be >= 1");
  c_.assign(n, 0);
  c_[0] = r;
}

CompositionStream::CompositionStream(int n, int r, std::int64_t rank)
    : n_(n), r_(r), c_(composition_at_rank(n, r, rank)) {}

bool CompositionStream::next() {
  if (n_ == 1) return false;
  if (c_[n_ - 1] == r_) return false;  // last composition
  int i = n_ - 2;
  while (i >= 0 && c_[i] == 0) --i;
  if (i < 0) return false;
  c_[i] -= 1;
  const std::int64_t carry = c_[n_ - 1] + 1;
  c_[n_ - 1] = 0;
  c_[i + 1] = carry;
  return true;
}

std::vector<std::int64_t> composition_at_rank(int n, int r, std::int64_t rank) {
  if (n < 1 || r < 1) throw Error("composition_at_rank: n, r must be >= 1");
  std::vector<std::int64_t> c(n, 0);
  std::int64_t remaining = r;
  for (int pos = 0; pos < n - 1; ++pos) {
    bool placed = false;
    for (std::int64_t k = remaining; k >= 0; --k) {
      // compositions of (remaining - k) into (n - pos - 1) parts
      const auto cnt = binom_checked(n - pos - 2 + remaining - k, remaining - k);
      if (!cnt) throw GridTooLargeError("composition_at_rank: count overflow");
      if (rank < *cnt) {
        c[pos] = k;
        remaining -= k;
        placed = true;
        break;
      }
      rank -= *cnt;
    }
    if (!placed) throw Error("composition_at_rank: rank out of range");
  }
  c[n - 1] = remaining;
  return c;
}

}  // namespace coposolve
