#include "coposolve/table.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "coposolve/copositive.hpp"
#include "coposolve/generators.hpp"
#include "coposolve/sip.hpp"
#include "coposolve/stqp.hpp"

namespace coposolve {

namespace {

double cpu_seconds() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", v);
  return buf;
}

struct StqpCell {
  StqpMethod method;
  std::optional<double> epsilon;
};

TableRow run_stqp_cell(const StqpCell& cell, int n, const TableOptions& opt,
                       const std::vector<SymMatrix>& instances,
                       const std::vector<std::optional<double>>& exact_values,
                       std::uint64_t cell_key) {
  TableRow row;
  row.n = n;
  row.method = to_string(cell.method);
  row.epsilon = cell.epsilon;
  double obj_sum = 0.0, dev_sum = 0.0, param_sum = 0.0, time_sum = 0.0;
  int dev_count = 0;
  for (std::size_t s = 0; s < instances.size(); ++s) {
    RngStream rng = RngStream(opt.base_seed).substream(mix_seed(cell_key, s));
    const double t0 = cpu_seconds();
    try {
      StqpResult res = [&] {
        switch (cell.method) {
          case StqpMethod::Exact:
            return stqp_exact(instances[s], opt.allow_large ? 64 : opt.deviation_cap);
          case StqpMethod::Grid:
            return stqp_grid(instances[s], *cell.epsilon, opt.grid_eval_budget);
          case StqpMethod::SimplexSample:
            return stqp_simplex_sample(instances[s], *cell.epsilon, 0.05, rng, opt.sample_cap);
          default: {
            const SamplePlan plan = grid_sample_plan(instances[s], *cell.epsilon, 0.05, 0.5);
            if (plan.M > opt.sample_cap)
              throw GridTooLargeError("planned sample count exceeds the cell budget");
            return stqp_grid_sample(instances[s], *cell.epsilon, 0.05, 0.5, rng);
          }
        }
      }();
      obj_sum += res.value;
      param_sum += res.M ? static_cast<double>(*res.M) : static_cast<double>(res.r.value_or(0));
      if (exact_values[s]) {
        dev_sum += res.value - *exact_values[s];
        ++dev_count;
      }
    } catch (const Error& e) {
      row.status = std::string("error: ") + e.what();
      return row;
    }
    time_sum += cpu_seconds() - t0;
  }
  const double cnt = static_cast<double>(instances.size());
  row.objective = obj_sum / cnt;
  row.param = param_sum / cnt;
  row.cpu_seconds = time_sum / cnt;
  if (dev_count > 0) row.deviation = dev_sum / dev_count;
  return row;
}

TableResult stqp_table(const TableOptions& opt) {
  TableResult result;
  std::vector<int> sizes = opt.sizes.empty() ? std::vector<int>{5, 10, 50} : opt.sizes;
  const std::vector<StqpCell> cells = {
      {StqpMethod::Exact, std::nullopt},       {StqpMethod::Grid, 1.0},
      {StqpMethod::Grid, 0.1},                 {StqpMethod::SimplexSample, 1.0},
      {StqpMethod::SimplexSample, 0.1},        {StqpMethod::GridSample, 1.0},
      {StqpMethod::GridSample, 0.1},
  };
  for (int n : sizes) {
    std::vector<SymMatrix> instances;
    std::vector<std::optional<double>> exact_values;
    for (int s = 0; s < opt.seeds; ++s) {
      RngStream rng = RngStream(opt.base_seed).substream(mix_seed(1000 + n, s));
      instances.push_back(gen_stqp_instance(n, rng));
      std::optional<double> exact;
      if (n <= opt.deviation_cap || opt.allow_large) {
        try {
          exact = stqp_exact(instances.back(), opt.allow_large ? 64 : opt.deviation_cap).value;
        } catch (const Error&) {
          exact = std::nullopt;
        }
      }
      exact_values.push_back(exact);
    }
    std::uint64_t cell_key = 7700 + static_cast<std::uint64_t>(n) * 13;
    for (const auto& cell : cells)
      result.rows.push_back(run_stqp_cell(cell, n, opt, instances, exact_values, cell_key++));
  }
  return result;
}

struct CoppCell {
  StqpMethod method;
  double alpha;
  double eps_total;  // epsilon * (1 + alpha)
};

TableRow run_copp_cell(const CoppCell& cell, int n, const TableOptions& opt,
                       std::uint64_t cell_key) {
  TableRow row;
  row.n = n;
  row.method = to_string(cell.method);
  row.epsilon = cell.eps_total;
  const double epsilon = cell.eps_total / (1.0 + cell.alpha);
  double obj_sum = 0.0, iter_sum = 0.0, time_sum = 0.0;
  for (int s = 0; s < opt.seeds; ++s) {
    RngStream gen_rng = RngStream(opt.base_seed).substream(mix_seed(2000 + n, s));
    const CoppInstance inst = gen_copp_instance(n, gen_rng);
    RngStream oracle_rng = RngStream(opt.base_seed).substream(mix_seed(cell_key, s));
    const double t0 = cpu_seconds();
    try {
      CoppOracleConfig oracle;
      oracle.method = cell.method;
      oracle.alpha = cell.alpha;
      oracle.exact_cap = opt.allow_large ? 64 : opt.deviation_cap;
      SipProblem problem = build_sip(inst, oracle, epsilon, oracle_rng);
      SipConfig cfg;
      cfg.epsilon = epsilon;
      cfg.alpha = cell.alpha;
      cfg.max_iterations = iteration_bound(problem.L, std::sqrt(5.0), epsilon);
      const Vec x1(inst.m, 1.0);
      SipOutcome outcome = run(problem, x1, cfg);
      iter_sum += static_cast<double>(outcome.report.iterations.size());
      obj_sum += outcome.report.f_at_kstar.value_or(
          outcome.report.iterations.empty() ? 0.0 : outcome.report.iterations.back().f_value);
    } catch (const Error& e) {
      row.status = std::string("error: ") + e.what();
      return row;
    }
    time_sum += cpu_seconds() - t0;
  }
  const double cnt = static_cast<double>(opt.seeds);
  row.objective = obj_sum / cnt;
  row.iterations = iter_sum / cnt;
  row.cpu_seconds = time_sum / cnt;
  return row;
}

TableResult copp_table(const TableOptions& opt) {
  TableResult result;
  std::vector<int> sizes = opt.sizes.empty() ? std::vector<int>{5, 10} : opt.sizes;
  const std::vector<CoppCell> cells = {
      {StqpMethod::Exact, 0.0, 2.0},
      {StqpMethod::Grid, 1.0, 2.0},
      {StqpMethod::Exact, 0.0, 0.2},
      {StqpMethod::Grid, 1.0, 0.2},
  };
  for (int n : sizes) {
    std::uint64_t cell_key = 9900 + static_cast<std::uint64_t>(n) * 17;
    for (const auto& cell : cells)
      result.rows.push_back(run_copp_cell(cell, n, opt, cell_key++));
  }
  return result;
}

}  // namespace

TableResult reproduce_table(const TableOptions& options) {
  TableResult result =
      options.kind == TableKind::Stqp ? stqp_table(options) : copp_table(options);
  std::ostringstream csv;
  if (options.kind == TableKind::Stqp)
    csv << "n,method,epsilon,M_or_r,objective,deviation_from_exact,cpu_seconds,status\n";
  else
    csv << "n,method,eps_times_1plusalpha,iterations,objective,cpu_seconds,status\n";
  for (const auto& row : result.rows) {
    csv << row.n << "," << row.method << ",";
    if (row.epsilon) csv << sci(*row.epsilon);
    csv << ",";
    if (options.kind == TableKind::Stqp) {
      csv << sci(row.param) << "," << sci(row.objective) << ",";
      if (row.deviation) csv << sci(*row.deviation);
      csv << "," << sci(row.cpu_seconds);
    } else {
      csv << sci(row.iterations) << "," << sci(row.objective) << "," << sci(row.cpu_seconds);
    }
    csv << "," << row.status << "\n";
  }
  result.csv = csv.str();
  return result;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace coposolve
