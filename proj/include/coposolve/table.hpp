#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coposolve/rng.hpp"

namespace coposolve {

enum class TableKind { Stqp, Copp };

struct TableOptions {
  TableKind kind = TableKind::Stqp;
  std::vector<int> sizes;       // empty selects the desk-scale defaults
  int seeds = 10;               // instances per cell
  std::uint64_t base_seed = 0;
  bool allow_large = false;     // lift the exact-deviation size cap
  int deviation_cap = 50;       // largest n for which deviations are computed
  std::int64_t sample_cap = 10'000'000;
  std::int64_t grid_eval_budget = 20'000'000;
};

/// One cell of the experiment grid, averaged over the seeds.
struct TableRow {
  int n = 0;
  std::string method;
  std::optional<double> epsilon;     // per-method accuracy (absent for exact)
  double param = 0.0;                // mean M or r
  double objective = 0.0;            // mean best value
  std::optional<double> deviation;   // mean |value - exact value|
  double iterations = 0.0;           // mean iteration count (copp tables)
  double cpu_seconds = 0.0;          // mean process CPU time
  std::string status = "ok";
};

struct TableResult {
  std::vector<TableRow> rows;
  std::string csv;
};

/// Runs the experiment grid at desk scale and formats it as CSV with
/// 3-significant-digit scientific notation. Cells whose method cannot run
/// at that size become error rows; the grid continues.
TableResult reproduce_table(const TableOptions& options);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace coposolve
