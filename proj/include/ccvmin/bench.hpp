#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "ccvmin/types.hpp"

namespace ccvmin {

/// Benchmark sweep: the cartesian grid of (m, n, alpha, snr_db) cells, a
/// number of trials per cell, and the methods to run on each generated
/// instance. One CSV row per (cell, trial, method).
struct BenchConfig {
  std::vector<int> m;
  std::vector<int> n;
  std::vector<double> alpha{1.0};
  std::vector<double> snr_db;
  int trials = 1;
  std::vector<std::string> methods{"ccvmin"};
  double delta = 1e-6;
  std::size_t max_nodes = 10'000'000;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds, per solve
  std::uint64_t seed = 0;
  int am_restarts = 50;
  bool parallel = false;    // bound children of a node concurrently
  bool wall_time = true;    // false zeroes the wall_time_s column (golden runs)
};

BenchConfig bench_config_from_json(const std::string& text);
BenchConfig read_bench_config(const std::filesystem::path& path);

/// Instance seed for a grid cell and trial, derived from the base seed. Cells
/// are numbered in declaration order (m outermost, snr_db innermost).
std::uint64_t bench_trial_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t trial);

inline constexpr const char* kBenchCsvHeader =
    "m,n,alpha,snr_db,seed,method,rel_error,residual_error,f_value,gap,status,"
    "nodes_explored,wall_time_s";

/// Runs the sweep, streaming CSV rows to `out`. Per-trial solver failures
/// become rows with a failure status; the sweep never aborts.
void run_bench(const BenchConfig& config, std::ostream& out);

}  // namespace ccvmin
