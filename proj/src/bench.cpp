#include "ccvmin/bench.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ccvmin/baselines.hpp"
#include "ccvmin/bnb.hpp"
#include "ccvmin/instance_io.hpp"
#include "ccvmin/synthetic.hpp"

namespace ccvmin {

namespace {

using nlohmann::json;

// Scalar or array; an empty array is an empty grid axis.
template <class T>
std::vector<T> list_field(const json& doc, const char* name) {
  const auto& node = doc.at(name);
  std::vector<T> out;
  if (node.is_array()) {
    for (const auto& x : node) out.push_back(x.get<T>());
  } else {
    out.push_back(node.get<T>());
  }
  return out;
}

double snr_entry(const json& x) {
  if (x.is_string()) {
    if (x.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw ParseError("bench config: snr_db entries must be numbers or \"inf\"");
  }
  return x.get<double>();
}

struct Row {
  std::string rel_error, residual_error, f_value, gap, status, nodes, wall;
};

}  // namespace

BenchConfig bench_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bench config: ") + e.what());
  }
  BenchConfig config;
  try {
    config.m = list_field<int>(doc, "m");
    config.n = list_field<int>(doc, "n");
    if (doc.contains("alpha")) config.alpha = list_field<double>(doc, "alpha");
    config.snr_db = {std::numeric_limits<double>::infinity()};
    if (doc.contains("snr_db")) {
      config.snr_db.clear();
      const auto& node = doc.at("snr_db");
      if (node.is_array())
        for (const auto& x : node) config.snr_db.push_back(snr_entry(x));
      else
        config.snr_db.push_back(snr_entry(node));
    }
    config.trials = doc.value("trials", 1);
    if (doc.contains("methods")) config.methods = list_field<std::string>(doc, "methods");
    config.delta = doc.value("delta", 1e-6);
    config.max_nodes = doc.value("max_nodes", std::size_t{10'000'000});
    if (doc.contains("time_limit_s")) config.time_limit = doc.at("time_limit_s").get<double>();
    config.seed = doc.value("seed", std::uint64_t{0});
    config.am_restarts = doc.value("am_restarts", 50);
    config.parallel = doc.value("parallel", false);
    config.wall_time = doc.value("wall_time", true);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bench config: ") + e.what());
  }
  if (config.trials < 1) throw ParseError("bench config: field 'trials' must be >= 1");
  for (const auto& method : config.methods)
    if (method != "ccvmin" && method != "am" && method != "oracle" && method != "solve1d")
      throw ParseError("bench config: unknown method '" + method + "'");
  return config;
}

BenchConfig read_bench_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open bench config: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return bench_config_from_json(ss.str());
}

std::uint64_t bench_trial_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t trial) {
  SplitMix64 sm{base ^ (0x9e3779b97f4a7c15ull * (cell + 1) + trial)};
  sm.next();
  return sm.next();
}

void run_bench(const BenchConfig& config, std::ostream& out) {
  out << kBenchCsvHeader << "\n";
  std::uint64_t cell = 0;
  for (int m : config.m)
    for (int n : config.n)
      for (double alpha : config.alpha)
        for (double snr_db : config.snr_db) {
          for (int trial = 0; trial < config.trials; ++trial) {
            const std::uint64_t seed = bench_trial_seed(config.seed, cell, trial);
            SyntheticSpec spec{m, n, alpha, snr_db, seed};
            const auto [inst, truth] = generate(spec);
            for (const auto& method : config.methods) {
              Row row;
              const auto t0 = std::chrono::steady_clock::now();
              try {
                Vectord x_hat;
                if (method == "ccvmin") {
                  BnbConfig bc;
                  bc.delta = config.delta;
                  bc.max_nodes = config.max_nodes;
                  bc.time_limit = config.time_limit;
                  bc.parallel_children = config.parallel;
                  const Solution sol = solve(inst, bc);
                  x_hat = sol.x_hat;
                  row.f_value = format_double(sol.f_value);
                  row.gap = format_double(sol.gap);
                  row.status = to_string(sol.status);
                  row.nodes = std::to_string(sol.stats.nodes_explored);
                } else if (method == "am") {
                  const UpperBound ub =
                      am_multistart(inst, config.am_restarts, seed ^ 0xa5a5a5a5ull);
                  x_hat = least_squares(inst.a, ub.pi.apply(inst.y));
                  row.f_value = format_double(ub.value);
                  row.status = "heuristic";
                  row.nodes = "0";
                } else if (method == "oracle") {
                  const OracleResult oracle = brute_force(inst);
                  x_hat = oracle.x_star;
                  row.f_value = format_double(oracle.f_star);
                  row.gap = "0";
                  row.status = "optimal";
                  row.nodes = "0";
                } else {  // solve1d
                  if (n != 1) throw InvalidInput("solve1d requires n = 1");
                  const Solve1dResult res = solve_1d(inst.y, inst.a.col(0));
                  x_hat = Vectord::Constant(1, res.x);
                  const Preprocessed prep = preprocess(inst);
                  row.f_value = format_double(objective_f(res.pi, prep));
                  row.gap = "0";
                  row.status = "optimal";
                  row.nodes = "0";
                }
                row.rel_error = format_double(relative_error(x_hat, truth.x_star));
                row.residual_error = format_double(residual_error(x_hat, inst));
              } catch (const std::exception&) {
                row = Row{};
                row.status = "failed";
              }
              const double wall =
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
              row.wall = config.wall_time ? format_double(wall) : "0";
              out << m << ',' << n << ',' << format_double(alpha) << ',' << format_double(snr_db)
                  << ',' << seed << ',' << method << ',' << row.rel_error << ','
                  << row.residual_error << ',' << row.f_value << ',' << row.gap << ','
                  << row.status << ',' << row.nodes << ',' << row.wall << "\n";
            }
          }
          ++cell;
        }
}

}  // namespace ccvmin
