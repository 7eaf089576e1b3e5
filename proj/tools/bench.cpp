// Benchmark of the parallel argmin kernels against the serial reference.
// Both must agree bit for bit; the table reports timings and the speedup.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coposolve/generators.hpp"
#include "coposolve/rng.hpp"
#include "coposolve/stqp.hpp"
#include "coposolve/stqp_kernels.hpp"

using namespace coposolve;

namespace {

double seconds(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

template <typename Fn>
double time_call(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds(t0);
}

void report(const char* name, double serial_s, double parallel_s, bool equal) {
  std::printf("%-22s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  results %s\n", name,
              serial_s, parallel_s, serial_s / parallel_s, equal ? "equal" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel kernels run serially\n");
#endif

  bool all_equal = true;

  {
    // grid scan: n = 12, r = 12 gives ~1.35M grid points
    RngStream rng(seed);
    const SymMatrix q = gen_stqp_instance(12, rng);
    const int r = 12;
    const auto total = *binom_checked(12 + r - 1, r);
    ArgminResult serial_res, parallel_res;
    const double ts = time_call([&] { serial_res = grid_argmin_serial(q, r, total); });
    const double tp = time_call([&] { parallel_res = grid_argmin_parallel(q, r, total); });
    const bool equal =
        serial_res.value == parallel_res.value && serial_res.index == parallel_res.index;
    all_equal = all_equal && equal;
    report("grid argmin (1.35M)", ts, tp, equal);
  }

  {
    // dense point scan: 2M uniform simplex samples at n = 30
    RngStream rng(seed + 1);
    const SymMatrix q = gen_stqp_instance(30, rng);
    const std::int64_t count = 2'000'000;
    std::vector<double> pts(static_cast<std::size_t>(count) * 30);
    RngStream draw_rng(seed + 2);
    for (std::int64_t i = 0; i < count; ++i) {
      double sum = 0.0;
      double* p = pts.data() + i * 30;
      for (int k = 0; k < 30; ++k) {
        p[k] = draw_rng.exponential();
        sum += p[k];
      }
      for (int k = 0; k < 30; ++k) p[k] /= sum;
    }
    ArgminResult serial_res, parallel_res;
    const double ts = time_call([&] { serial_res = points_argmin_serial(q, pts, count, 0); });
    const double tp = time_call([&] { parallel_res = points_argmin_parallel(q, pts, count, 0); });
    const bool equal =
        serial_res.value == parallel_res.value && serial_res.index == parallel_res.index;
    all_equal = all_equal && equal;
    report("sample argmin (2M)", ts, tp, equal);
  }

  return all_equal ? 0 : 1;
}
