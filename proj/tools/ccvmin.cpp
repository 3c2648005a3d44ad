// ccvmin: solver and benchmark harness for linear regression without
// correspondences (the observations are an unknown permutation of noisy
// linear measurements).
//
//   ccvmin gen    --m 100 --n 3 --alpha 1.0 --snr-db 40 --seed 7 --out inst.json
//   ccvmin solve  --instance inst.json --delta 1e-6 --method ccvmin --out sol.json
//   ccvmin bench  --config grid.json --out results.csv
//
// Exit codes: 0 success, 1 invalid input, 2 limit-terminated solve.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ccvmin/baselines.hpp"
#include "ccvmin/bench.hpp"
#include "ccvmin/bnb.hpp"
#include "ccvmin/instance_io.hpp"
#include "ccvmin/synthetic.hpp"

namespace {

double parse_snr(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ccvmin::InvalidInput("--snr-db expects a number or 'inf', got '" + text + "'");
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ccvmin::ParseError("cannot open for writing: " + path);
  f << text;
}

int run_gen(int m, int n, double alpha, const std::string& snr, std::uint64_t seed,
            const std::string& out) {
  ccvmin::SyntheticSpec spec{m, n, alpha, parse_snr(snr), seed};
  const auto [inst, truth] = ccvmin::generate(spec);
  write_output(out, ccvmin::instance_to_json(inst, &truth));
  return 0;
}

int run_solve(const std::string& instance_path, const std::string& method, double delta,
              double time_limit, std::size_t max_nodes, int restarts, std::uint64_t seed,
              bool parallel, const std::string& out) {
  const ccvmin::LoadedInstance loaded = ccvmin::read_instance(instance_path);
  const ccvmin::ProblemInstance& inst = loaded.inst;

  ccvmin::Solution sol;
  if (method == "ccvmin") {
    ccvmin::BnbConfig config;
    config.delta = delta;
    config.time_limit = time_limit;
    config.max_nodes = max_nodes;
    config.parallel_children = parallel;
    sol = ccvmin::solve(inst, config);
  } else {
    const ccvmin::Preprocessed prep = ccvmin::preprocess(inst);
    if (method == "am") {
      const ccvmin::UpperBound ub = ccvmin::am_multistart(inst, restarts, seed);
      sol.pi_hat = ub.pi;
      sol.f_value = ub.value;
      sol.gap = std::numeric_limits<double>::quiet_NaN();  // heuristic, no certificate
      sol.stats.am_calls = static_cast<std::size_t>(restarts) + 1;
    } else if (method == "oracle") {
      const ccvmin::OracleResult oracle = ccvmin::brute_force(inst);
      sol.pi_hat = oracle.pi_star;
      sol.f_value = oracle.f_star;
    } else if (method == "solve1d") {
      if (inst.n() != 1) throw ccvmin::InvalidInput("solve1d requires n = 1");
      const ccvmin::Solve1dResult res = ccvmin::solve_1d(inst.y, inst.a.col(0));
      sol.pi_hat = res.pi;
      sol.f_value = ccvmin::objective_f(res.pi, prep);
    }
    sol.x_hat = ccvmin::recover_signal(sol.pi_hat, inst, prep);
    sol.residual = (sol.pi_hat.apply(inst.y) - inst.a * sol.x_hat).norm();
  }

  std::optional<double> rel_error;
  if (loaded.ground_truth)
    rel_error = ccvmin::relative_error(sol.x_hat, loaded.ground_truth->x_star);
  std::optional<std::string> status_override;
  if (method == "am") status_override = "heuristic";
  write_output(out, ccvmin::solution_to_json(sol, method, rel_error, status_override));
  return (method == "ccvmin" && sol.status != ccvmin::SolveStatus::kOptimal) ? 2 : 0;
}

int run_bench_cmd(const std::string& config_path, const std::string& out) {
  const ccvmin::BenchConfig config = ccvmin::read_bench_config(config_path);
  if (out.empty()) {
    ccvmin::run_bench(config, std::cout);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ccvmin::ParseError("cannot open for writing: " + out);
    ccvmin::run_bench(config, f);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver for linear regression without correspondences"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
  int m = 0, n = 0;
  double alpha = 1.0;
  std::string snr = "inf";
  std::uint64_t seed = 0;
  std::string out;
  gen->add_option("--m", m, "number of measurements")->required();
  gen->add_option("--n", n, "signal dimension")->required();
  gen->add_option("--alpha", alpha, "shuffled fraction in [0,1]")->default_val(1.0);
  gen->add_option("--snr-db", snr, "SNR in dB, or 'inf' for noiseless")->default_val("inf");
  gen->add_option("--seed", seed, "RNG seed")->default_val(0);
  gen->add_option("--out", out, "output path (default stdout)");

  auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
  std::string instance_path, method = "ccvmin", solve_out;
  double delta = 1e-6;
  double time_limit = std::numeric_limits<double>::infinity();
  std::size_t max_nodes = 10'000'000;
  int restarts = 50;
  std::uint64_t solve_seed = 0;
  bool parallel = false;
  solve_cmd->add_option("--instance", instance_path, "instance file")->required();
  solve_cmd->add_option("--delta", delta, "optimality tolerance on f")->default_val(1e-6);
  solve_cmd->add_option("--time-limit", time_limit, "time limit in seconds");
  solve_cmd->add_option("--max-nodes", max_nodes, "node limit")->default_val(10'000'000);
  solve_cmd->add_option("--method", method, "ccvmin|am|oracle|solve1d")
      ->check(CLI::IsMember({"ccvmin", "am", "oracle", "solve1d"}));
  solve_cmd->add_option("--restarts", restarts, "multistart count for --method am")->default_val(50);
  solve_cmd->add_option("--seed", solve_seed, "RNG seed for --method am")->default_val(0);
  solve_cmd->add_flag("--parallel", parallel, "bound sibling nodes concurrently");
  solve_cmd->add_option("--out", solve_out, "output path (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark sweep to CSV");
  std::string config_path, bench_out;
  bench_cmd->add_option("--config", config_path, "sweep config (JSON)")->required();
  bench_cmd->add_option("--out", bench_out, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return run_gen(m, n, alpha, snr, seed, out);
    if (solve_cmd->parsed())
      return run_solve(instance_path, method, delta, time_limit, max_nodes, restarts, solve_seed,
                       parallel, solve_out);
    if (bench_cmd->parsed()) return run_bench_cmd(config_path, bench_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
