#include "coposolve/generators.hpp"

#include <fstream>

namespace coposolve {

SymMatrix gen_stqp_instance(int n, RngStream& rng) {
  if (n < 1) throw DimensionError("gen_stqp_instance: n must be >= 1");
  SymMatrix q(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) q.set(i, j, rng.uniform(-1.0, 1.0));
  return q;
}

CoppInstance gen_copp_instance(int n, RngStream& rng) {
  if (n < 5) throw DimensionError("gen_copp_instance: n must be >= 5");
  constexpr int m = 5;
  CoppInstance inst;
  inst.m = m;
  inst.n = n;
  inst.feasible_set = FeasibleSet::whole_space();
  inst.c.resize(m);
  for (int i = 0; i < m; ++i) inst.c[i] = rng.chi1();

  SymMatrix a0(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == j && i < m)
        a0.set(i, j, 0.0);
      else
        a0.set(i, j, rng.chi1() + 0.01);
    }
  inst.A.push_back(a0);

  for (int v = 0; v < m; ++v) {
    SymMatrix av(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        if (i == j && i < m)
          av.set(i, j, i == v ? 1.0 : 0.0);
        else
          av.set(i, j, rng.normal());
      }
    inst.A.push_back(av);
  }
  return inst;
}

SymMatrix gen_cp_product(int n, int k, RngStream& rng) {
  if (n < 1 || k < 1) throw DimensionError("gen_cp_product: sizes must be >= 1");
  std::vector<double> b(static_cast<std::size_t>(n) * k);
  for (auto& v : b) v = std::fabs(rng.normal());
  SymMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int l = 0; l < k; ++l)
        acc += b[static_cast<std::size_t>(i) * k + l] * b[static_cast<std::size_t>(j) * k + l];
      out.set(i, j, acc);
    }
  return out;
}

SymMatrix load_cp_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file: " + path);
  int n = 0;
  if (!(in >> n) || n < 1) throw FormatError("matrix file: bad order line in " + path);
  std::vector<double> rows(static_cast<std::size_t>(n) * n);
  for (auto& v : rows)
    if (!(in >> v)) throw FormatError("matrix file: truncated entries in " + path);
  if (SymMatrix::max_asymmetry(n, rows) > 1e-8)
    throw FormatError("matrix file: asymmetry beyond 1e-8 in " + path);
  return SymMatrix::from_rows(n, rows);
}

}  // namespace coposolve
