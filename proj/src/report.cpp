#include "coposolve/report.hpp"

#include "json.hpp"

namespace coposolve {

using nlohmann::json;

const char* to_string(Branch b) {
  return b == Branch::Objective ? "objective" : "constraint";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::IterationCap: return "iteration_cap";
    case Termination::TimeCap: return "time_cap";
    default: return "certificate_found";
  }
}

std::string RunReport::to_json(const Vec* solution) const {
  json j;
  j["schema"] = "coposolve/run/1";
  // elapsed stays off the wire: serialized reports must compare equal
  // across reruns of the same seed
  json iters = json::array();
  for (const auto& rec : iterations) {
    iters.push_back({{"k", rec.k},
                     {"branch", to_string(rec.branch)},
                     {"g_value", rec.g_value},
                     {"f_value", rec.f_value},
                     {"subproblem_evals", rec.subproblem_evals}});
  }
  j["iterations"] = iters;
  json summary;
  summary["epsilon"] = epsilon;
  summary["terminated_by"] = to_string(terminated_by);
  summary["probabilistic"] = probabilistic;
  summary["x1_projected"] = x1_projected;
  if (k_star) summary["k_star"] = *k_star;
  if (f_at_kstar) summary["f_at_kstar"] = *f_at_kstar;
  if (G_check) summary["g_check"] = *G_check;
  if (solution) summary["solution"] = *solution;
  j["summary"] = summary;
  return j.dump(2);
}

}  // namespace coposolve
