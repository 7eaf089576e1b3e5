#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "coposolve/copositive.hpp"
#include "coposolve/cptest.hpp"
#include "coposolve/generators.hpp"
#include "coposolve/sip.hpp"
#include "coposolve/stqp.hpp"
#include "coposolve/table.hpp"

namespace {

using namespace coposolve;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    write_text_file(out_path, text + "\n");
  }
}

StqpMethod parse_method(const std::string& name) {
  const auto m = stqp_method_from_string(name);
  if (!m) throw ConfigError("unknown method '" + name + "'");
  return *m;
}

nlohmann::json stqp_result_json(const StqpResult& res) {
  nlohmann::json j;
  j["method"] = to_string(res.method);
  j["value"] = res.value;
  j["minimizer"] = res.minimizer.coords();
  j["evaluations"] = res.evaluations;
  if (res.r) j["r"] = *res.r;
  if (res.M) j["M"] = *res.M;
  j["clamped"] = res.clamped;
  return j;
}

std::string stqp_result_csv(const StqpResult& res) {
  std::ostringstream os;
  os << "method,value,evaluations,r,M,clamped\n";
  os << to_string(res.method) << "," << res.value << "," << res.evaluations << ",";
  if (res.r) os << *res.r;
  os << ",";
  if (res.M) os << *res.M;
  os << "," << (res.clamped ? 1 : 0);
  return os.str();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"copositive programming toolkit"};
  app.require_subcommand(1);

  // ---- gen-instance ----
  auto* gen = app.add_subcommand("gen-instance", "generate a random instance file");
  std::string gen_kind = "stqp";
  int gen_n = 5, gen_rows = 3, gen_cols = 5;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "stqp | copp | cp-product")
      ->check(CLI::IsMember({"stqp", "copp", "cp-product"}));
  gen->add_option("--n", gen_n, "matrix order");
  gen->add_option("--rows", gen_rows, "rows of B for cp-product");
  gen->add_option("--cols", gen_cols, "columns of B for cp-product");
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "output path")->required();

  // ---- solve-stqp ----
  auto* stqp = app.add_subcommand("solve-stqp", "minimize d^T Q d over the simplex");
  std::string stqp_matrix, stqp_method = "exact", stqp_out, stqp_format = "json";
  int stqp_gen_n = 0;
  double stqp_eps = 0.1, stqp_phi = 0.05, stqp_fraction = 0.5;
  std::optional<std::uint64_t> stqp_seed;
  std::int64_t stqp_mcap = kSampleDefaultCap;
  stqp->add_option("--matrix", stqp_matrix, "matrix file path");
  stqp->add_option("--gen-n", stqp_gen_n, "generate a random instance of this order instead");
  stqp->add_option("--method", stqp_method, "exact | grid | simplex-sample | grid-sample");
  stqp->add_option("--epsilon", stqp_eps, "target accuracy");
  stqp->add_option("--phi", stqp_phi, "per-call failure probability");
  stqp->add_option("--fraction", stqp_fraction, "grid sample fraction");
  stqp->add_option("--m-cap", stqp_mcap, "sample count cap");
  stqp->add_option("--seed", [&stqp_seed](const std::vector<std::string>& v) {
        stqp_seed = std::stoull(v[0]);
        return true;
      }, "RNG seed (required for stochastic methods)");
  stqp->add_option("--out", stqp_out, "output path (stdout when absent)");
  stqp->add_option("--format", stqp_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  std::string stqp_milp_path;
  stqp->add_option("--export-milp", stqp_milp_path,
                   "also write the mixed-integer reformulation as an LP file");

  // ---- solve-copp ----
  auto* copp = app.add_subcommand("solve-copp", "run the subgradient solver on an instance");
  std::string copp_instance, copp_method = "exact", copp_out;
  int copp_gen_n = 0;
  double copp_eps = 1.0, copp_alpha = 0.0, copp_phi = 0.05, copp_fraction = 0.5;
  std::optional<double> copp_time_cap;
  std::optional<std::int64_t> copp_max_iter;
  std::uint64_t copp_seed = 0;
  std::string copp_x1 = "ones";
  copp->add_option("--instance", copp_instance, "instance JSON path");
  copp->add_option("--gen-n", copp_gen_n, "generate a random family instance of this order");
  copp->add_option("--method", copp_method, "exact | grid | simplex-sample | grid-sample");
  copp->add_option("--epsilon", copp_eps, "accuracy epsilon");
  copp->add_option("--alpha", copp_alpha, "oracle violation measure");
  copp->add_option("--phi", copp_phi, "per-call failure probability");
  copp->add_option("--fraction", copp_fraction, "grid sample fraction");
  copp->add_option("--max-iter", [&copp_max_iter](const std::vector<std::string>& v) {
        copp_max_iter = std::stoll(v[0]);
        return true;
      }, "iteration cap (default: theoretical bound with dist sqrt(m))");
  copp->add_option("--time-cap", [&copp_time_cap](const std::vector<std::string>& v) {
        copp_time_cap = std::stod(v[0]);
        return true;
      }, "wall-clock cap in seconds");
  copp->add_option("--seed", copp_seed, "RNG seed")->required();
  copp->add_option("--x1", copp_x1, "initial point: ones | zeros");
  copp->add_option("--out", copp_out, "output path (stdout when absent)");

  // ---- test-cp ----
  auto* cp = app.add_subcommand("test-cp", "test a matrix for complete positivity");
  std::string cp_matrix, cp_out, cp_method = "exact";
  int cp_rows = 0, cp_cols = 0;
  double cp_t = 0.0, cp_alpha = 0.0, cp_phi = 0.05, cp_fraction = 0.5;
  std::optional<double> cp_time_cap;
  std::uint64_t cp_seed = 0;
  cp->add_option("--matrix", cp_matrix, "matrix file path");
  cp->add_option("--gen-rows", cp_rows, "generate B B^T with B of this many rows");
  cp->add_option("--gen-cols", cp_cols, "columns of B");
  cp->add_option("--t", cp_t, "schedule constant t > 1 (default 55 for n <= 6, else 15)");
  cp->add_option("--alpha", cp_alpha, "oracle violation measure");
  cp->add_option("--method", cp_method, "exact | grid | simplex-sample | grid-sample");
  cp->add_option("--phi", cp_phi, "per-call failure probability");
  cp->add_option("--fraction", cp_fraction, "grid sample fraction");
  cp->add_option("--time-cap", [&cp_time_cap](const std::vector<std::string>& v) {
        cp_time_cap = std::stod(v[0]);
        return true;
      }, "wall-clock cap in seconds");
  cp->add_option("--seed", cp_seed, "RNG seed")->required();
  cp->add_option("--out", cp_out, "output path (stdout when absent)");

  // ---- reproduce-table ----
  auto* table = app.add_subcommand("reproduce-table", "run an experiment grid, emit CSV");
  std::string table_which = "stqp", table_out;
  std::vector<int> table_sizes;
  int table_seeds = 10;
  std::uint64_t table_seed = 0;
  bool table_allow_large = false;
  table->add_option("--which", table_which, "stqp | copp")
      ->check(CLI::IsMember({"stqp", "copp"}));
  table->add_option("--sizes", table_sizes, "orders to run (defaults to desk scale)");
  table->add_option("--seeds", table_seeds, "instances per cell");
  table->add_option("--seed", table_seed, "base RNG seed")->required();
  table->add_flag("--allow-large", table_allow_large,
                  "lift the exact-deviation size cap (deviations may be absent)");
  table->add_option("--out", table_out, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    RngStream rng(gen_seed);
    if (gen_kind == "stqp") {
      save_matrix(gen_stqp_instance(gen_n, rng), gen_out);
    } else if (gen_kind == "copp") {
      save_instance(gen_copp_instance(gen_n, rng), gen_out);
    } else {
      save_matrix(gen_cp_product(gen_rows, gen_cols, rng), gen_out);
    }
    return 0;
  }

  if (stqp->parsed()) {
    const StqpMethod method = parse_method(stqp_method);
    const bool stochastic =
        method == StqpMethod::SimplexSample || method == StqpMethod::GridSample;
    if (stochastic && !stqp_seed)
      throw ConfigError("solve-stqp: --seed is required for sampling methods");
    SymMatrix q = [&] {
      if (!stqp_matrix.empty()) return load_matrix(stqp_matrix);
      if (stqp_gen_n >= 1) {
        if (!stqp_seed) throw ConfigError("solve-stqp: --seed is required with --gen-n");
        RngStream rng(*stqp_seed);
        return gen_stqp_instance(stqp_gen_n, rng);
      }
      throw ConfigError("solve-stqp: provide --matrix or --gen-n");
    }();
    if (!stqp_milp_path.empty()) export_milp(q, stqp_milp_path);
    RngStream rng = stqp_seed ? RngStream(*stqp_seed).substream(1) : RngStream(0);
    StqpResult res = [&] {
      switch (method) {
        case StqpMethod::Exact: return stqp_exact(q);
        case StqpMethod::Grid: return stqp_grid(q, stqp_eps);
        case StqpMethod::SimplexSample:
          return stqp_simplex_sample(q, stqp_eps, stqp_phi, rng, stqp_mcap);
        default: return stqp_grid_sample(q, stqp_eps, stqp_phi, stqp_fraction, rng);
      }
    }();
    emit(stqp_format == "json" ? stqp_result_json(res).dump(2) : stqp_result_csv(res),
         stqp_out);
    return 0;
  }

  if (copp->parsed()) {
    CoppInstance inst = [&] {
      if (!copp_instance.empty()) return load_instance(copp_instance);
      if (copp_gen_n >= 5) {
        RngStream rng = RngStream(copp_seed).substream(0);
        return gen_copp_instance(copp_gen_n, rng);
      }
      throw ConfigError("solve-copp: provide --instance or --gen-n (>= 5)");
    }();
    CoppOracleConfig oracle;
    oracle.method = parse_method(copp_method);
    oracle.alpha = copp_alpha;
    oracle.phi = copp_phi;
    oracle.sample_fraction = copp_fraction;
    RngStream oracle_rng = RngStream(copp_seed).substream(1);
    SipProblem problem = build_sip(inst, oracle, copp_eps, oracle_rng);
    SipConfig cfg;
    cfg.epsilon = copp_eps;
    cfg.alpha = copp_alpha;
    cfg.max_iterations = copp_max_iter
                             ? *copp_max_iter
                             : iteration_bound(problem.L, std::sqrt(double(inst.m)), copp_eps);
    cfg.time_cap_seconds = copp_time_cap;
    const Vec x1(inst.m, copp_x1 == "zeros" ? 0.0 : 1.0);
    SipOutcome outcome = run(problem, x1, cfg);
    emit(outcome.report.to_json(outcome.best_point ? &*outcome.best_point : nullptr), copp_out);
    return 0;
  }

  if (cp->parsed()) {
    SymMatrix c = [&] {
      if (!cp_matrix.empty()) return load_cp_matrix(cp_matrix);
      if (cp_rows >= 1 && cp_cols >= 1) {
        RngStream rng = RngStream(cp_seed).substream(0);
        return gen_cp_product(cp_rows, cp_cols, rng);
      }
      throw ConfigError("test-cp: provide --matrix or --gen-rows/--gen-cols");
    }();
    CpTestConfig cfg = CpTestConfig::defaults_for(c.order());
    if (cp_t > 0.0) cfg.t = cp_t;
    cfg.alpha = cp_alpha;
    cfg.oracle.method = parse_method(cp_method);
    cfg.oracle.alpha = cp_alpha;
    cfg.oracle.phi = cp_phi;
    cfg.oracle.sample_fraction = cp_fraction;
    cfg.time_cap_seconds = cp_time_cap;
    RngStream rng = RngStream(cp_seed).substream(1);
    CpVerdict verdict = test_cp(c, cfg, rng);
    emit(verdict.to_json(c.order(), cfg), cp_out);
    return verdict.verdict == CpStatus::NotCompletelyPositive ? 2 : 0;
  }

  if (table->parsed()) {
    TableOptions opt;
    opt.kind = table_which == "stqp" ? TableKind::Stqp : TableKind::Copp;
    opt.sizes = table_sizes;
    opt.seeds = table_seeds;
    opt.base_seed = table_seed;
    opt.allow_large = table_allow_large;
    TableResult result = reproduce_table(opt);
    write_text_file(table_out, result.csv);
    std::cout << "wrote " << result.rows.size() << " rows to " << table_out << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const coposolve::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
