#include "ccvmin/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ccvmin {

namespace {

using nlohmann::json;

json vector_to_json(const Vectord& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vectord vector_from_json(const json& arr, const char* field) {
  if (!arr.is_array()) throw ParseError(std::string("instance: field '") + field + "' must be an array");
  Vectord v(static_cast<Index>(arr.size()));
  Index i = 0;
  for (const auto& x : arr) {
    if (!x.is_number()) throw ParseError(std::string("instance: field '") + field + "' has a non-numeric entry");
    v[i++] = x.get<double>();
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string instance_to_json(const ProblemInstance& inst, const GroundTruth* ground_truth) {
  json doc;
  doc["m"] = inst.m();
  doc["n"] = inst.n();
  json rows = json::array();
  for (Index i = 0; i < inst.m(); ++i) {
    json row = json::array();
    for (Index j = 0; j < inst.n(); ++j) row.push_back(inst.a(i, j));
    rows.push_back(std::move(row));
  }
  doc["A"] = std::move(rows);
  doc["y"] = vector_to_json(inst.y);
  if (ground_truth) {
    json gt;
    gt["x_star"] = vector_to_json(ground_truth->x_star);
    gt["pi_star"] = ground_truth->pi_star.map();
    gt["sigma"] = ground_truth->sigma;
    doc["ground_truth"] = std::move(gt);
  }
  return doc.dump(2) + "\n";
}

LoadedInstance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  for (const char* field : {"m", "n", "A", "y"})
    if (!doc.contains(field)) throw ParseError(std::string("instance: missing field '") + field + "'");

  LoadedInstance out;
  const auto m = doc["m"].get<Index>();
  const auto n = doc["n"].get<Index>();
  if (m < 1 || n < 1) throw ParseError("instance: m and n must be positive");
  if (!doc["A"].is_array() || static_cast<Index>(doc["A"].size()) != m)
    throw ParseError("instance: field 'A' must be an array of m rows");
  out.inst.a.resize(m, n);
  Index i = 0;
  for (const auto& row : doc["A"]) {
    const Vectord r = vector_from_json(row, "A");
    if (r.size() != n) throw ParseError("instance: row " + std::to_string(i) + " of 'A' has wrong length");
    out.inst.a.row(i++) = r.transpose();
  }
  out.inst.y = vector_from_json(doc["y"], "y");
  if (out.inst.y.size() != m) throw ParseError("instance: field 'y' has wrong length");
  out.inst.validate();

  if (doc.contains("ground_truth")) {
    const auto& gt = doc["ground_truth"];
    GroundTruth truth;
    truth.x_star = vector_from_json(gt.at("x_star"), "ground_truth.x_star");
    if (!gt.contains("pi_star") || !gt["pi_star"].is_array())
      throw ParseError("instance: ground_truth.pi_star must be an array");
    std::vector<int> map;
    for (const auto& x : gt["pi_star"]) map.push_back(x.get<int>());
    try {
      truth.pi_star = Permutation(std::move(map));
    } catch (const InvalidInput& e) {
      throw ParseError(std::string("instance: ground_truth.pi_star: ") + e.what());
    }
    truth.sigma = gt.value("sigma", 0.0);
    out.ground_truth = std::move(truth);
  }
  return out;
}

void write_instance(const std::filesystem::path& path, const ProblemInstance& inst,
                    const GroundTruth* ground_truth) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open for writing: " + path.string());
  f << instance_to_json(inst, ground_truth);
}

LoadedInstance read_instance(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open instance file: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return instance_from_json(ss.str());
}

std::string solution_to_json(const Solution& sol, const std::string& method,
                             std::optional<double> rel_error,
                             std::optional<std::string> status_override) {
  json doc;
  doc["method"] = method;
  doc["f_value"] = sol.f_value;
  doc["residual"] = sol.residual;
  doc["gap"] = sol.gap;
  doc["status"] = status_override ? *status_override : to_string(sol.status);
  doc["pi_hat"] = sol.pi_hat.map();
  doc["x_hat"] = vector_to_json(sol.x_hat);
  if (rel_error) doc["rel_error"] = *rel_error;
  json stats;
  stats["nodes_explored"] = sol.stats.nodes_explored;
  stats["nodes_pruned"] = sol.stats.nodes_pruned;
  stats["am_calls"] = sol.stats.am_calls;
  stats["wall_time_s"] = sol.stats.wall_time;
  doc["stats"] = std::move(stats);
  return doc.dump(2) + "\n";
}

}  // namespace ccvmin
