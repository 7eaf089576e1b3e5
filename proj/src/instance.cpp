#include "coposolve/instance.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace coposolve {

using nlohmann::json;

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw Error("FeasibleSet: ball radius must be positive");
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size()) throw DimensionError("FeasibleSet: box bound lengths differ");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i]) throw Error("FeasibleSet: box lower bound exceeds upper");
  return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

Vec FeasibleSet::project(const Vec& x) const {
  if (std::holds_alternative<WholeSpace>(v_)) return x;
  if (const auto* b = std::get_if<Ball>(&v_)) {
    if (b->center.size() != x.size()) throw DimensionError("project: ball dimension mismatch");
    Vec d(x.size());
    double nrm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      d[i] = x[i] - b->center[i];
      nrm += d[i] * d[i];
    }
    nrm = std::sqrt(nrm);
    if (nrm <= b->radius) return x;
    Vec out(x.size());
    const double s = b->radius / nrm;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = b->center[i] + s * d[i];
    return out;
  }
  if (const auto* b = std::get_if<Box>(&v_)) {
    if (b->lower.size() != x.size()) throw DimensionError("project: box dimension mismatch");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      out[i] = std::min(std::max(x[i], b->lower[i]), b->upper[i]);
    return out;
  }
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], 0.0);
  return out;
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  const Vec p = project(x);
  double dist = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dist += (x[i] - p[i]) * (x[i] - p[i]);
  return std::sqrt(dist) <= tol;
}

const char* FeasibleSet::kind() const {
  if (std::holds_alternative<WholeSpace>(v_)) return "whole_space";
  if (std::holds_alternative<Ball>(v_)) return "ball";
  if (std::holds_alternative<Box>(v_)) return "box";
  return "nonnegative_orthant";
}

void CoppInstance::validate() const {
  if (m < 0 || n < 1) throw DimensionError("CoppInstance: bad sizes");
  if (static_cast<int>(c.size()) != m) throw DimensionError("CoppInstance: c length != m");
  if (static_cast<int>(A.size()) != m + 1)
    throw DimensionError("CoppInstance: expected m + 1 matrices");
  for (const auto& a : A)
    if (a.order() != n) throw DimensionError("CoppInstance: matrix order mismatch");
}

namespace {

json bound_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

// unbounded_sign: value used for null entries (-1 on lower bounds, +1 on upper)
double bound_from_json(const json& j, double unbounded_sign) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw FormatError("instance: bad bound string '" + s + "'");
  }
  if (j.is_null()) return unbounded_sign * std::numeric_limits<double>::infinity();
  return j.get<double>();
}

json feasible_set_to_json(const FeasibleSet& s) {
  json j;
  j["type"] = s.kind();
  if (const auto* b = s.get_if<FeasibleSet::Ball>()) {
    j["center"] = b->center;
    j["radius"] = b->radius;
  } else if (const auto* b = s.get_if<FeasibleSet::Box>()) {
    json lo = json::array(), hi = json::array();
    for (double v : b->lower) lo.push_back(bound_to_json(v));
    for (double v : b->upper) hi.push_back(bound_to_json(v));
    j["lower"] = lo;
    j["upper"] = hi;
  }
  return j;
}

FeasibleSet feasible_set_from_json(const json& j) {
  const std::string type = j.value("type", "whole_space");
  if (type == "whole_space") return FeasibleSet::whole_space();
  if (type == "nonnegative_orthant") return FeasibleSet::nonnegative_orthant();
  if (type == "ball")
    return FeasibleSet::ball(j.at("center").get<Vec>(), j.at("radius").get<double>());
  if (type == "box") {
    Vec lo, hi;
    for (const auto& v : j.at("lower")) lo.push_back(bound_from_json(v, -1.0));
    for (const auto& v : j.at("upper")) hi.push_back(bound_from_json(v, +1.0));
    return FeasibleSet::box(std::move(lo), std::move(hi));
  }
  throw FormatError("instance: unknown feasible_set type '" + type + "'");
}

}  // namespace

std::string instance_to_json(const CoppInstance& inst) {
  inst.validate();
  json j;
  j["m"] = inst.m;
  j["n"] = inst.n;
  j["c"] = inst.c;
  json mats = json::array();
  for (const auto& a : inst.A) mats.push_back(a.data());
  j["A"] = mats;
  j["feasible_set"] = feasible_set_to_json(inst.feasible_set);
  return j.dump(2);
}

CoppInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("instance: JSON parse error: ") + e.what());
  }
  CoppInstance inst;
  try {
    inst.m = j.at("m").get<int>();
    inst.n = j.at("n").get<int>();
    inst.c = j.at("c").get<Vec>();
    for (const auto& rows : j.at("A"))
      inst.A.push_back(SymMatrix::from_rows(inst.n, rows.get<std::vector<double>>()));
    if (j.contains("feasible_set"))
      inst.feasible_set = feasible_set_from_json(j.at("feasible_set"));
  } catch (const json::exception& e) {
    throw FormatError(std::string("instance: bad field: ") + e.what());
  }
  inst.validate();
  return inst;
}

CoppInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

void save_instance(const CoppInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write instance file: " + path);
  out << instance_to_json(inst) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace coposolve
