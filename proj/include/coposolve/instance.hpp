#pragma once

#include <string>
#include <variant>
#include <vector>

#include "coposolve/matrix.hpp"

namespace coposolve {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);

/// Constraint set S of the decision variable. Box bounds admit +-infinity.
class FeasibleSet {
public:
  struct WholeSpace {};
  struct Ball {
    Vec center;
    double radius;
  };
  struct Box {
    Vec lower;
    Vec upper;
  };
  struct NonnegativeOrthant {};

  FeasibleSet() : v_(WholeSpace{}) {}

  static FeasibleSet whole_space() { return FeasibleSet(WholeSpace{}); }
  static FeasibleSet ball(Vec center, double radius);
  static FeasibleSet box(Vec lower, Vec upper);
  static FeasibleSet nonnegative_orthant() { return FeasibleSet(NonnegativeOrthant{}); }

  /// Euclidean projection onto the set.
  Vec project(const Vec& x) const;

  bool contains(const Vec& x, double tol = 1e-12) const;

  const char* kind() const;

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

private:
  using Variant = std::variant<WholeSpace, Ball, Box, NonnegativeOrthant>;
  explicit FeasibleSet(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Linear conic program data: minimize c.x subject to
/// A_0 + sum_i x_i A_i copositive and x in the feasible set.
struct CoppInstance {
  int m = 0;                // number of decision variables
  int n = 0;                // matrix order
  Vec c;                    // objective, length m
  std::vector<SymMatrix> A; // m + 1 matrices: A_0 then A_1..A_m
  FeasibleSet feasible_set;

  void validate() const;
};

/// JSON instance format: keys m, n, c, A (row-major matrices), feasible_set.
CoppInstance load_instance(const std::string& path);
void save_instance(const CoppInstance& inst, const std::string& path);
std::string instance_to_json(const CoppInstance& inst);
CoppInstance instance_from_json(const std::string& text);

}  // namespace coposolve
