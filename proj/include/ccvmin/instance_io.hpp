#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ccvmin/bnb.hpp"
#include "ccvmin/problem.hpp"
#include "ccvmin/synthetic.hpp"

namespace ccvmin {

struct LoadedInstance {
  ProblemInstance inst;
  std::optional<GroundTruth> ground_truth;
};

/// Instance document: a JSON object with fields m, n, A (row-major array of
/// rows), y, and an optional ground_truth {x_star, pi_star, sigma}. Numbers
/// round-trip 64-bit floats; serialization is byte-deterministic.
std::string instance_to_json(const ProblemInstance& inst,
                             const GroundTruth* ground_truth = nullptr);
LoadedInstance instance_from_json(const std::string& text);

void write_instance(const std::filesystem::path& path, const ProblemInstance& inst,
                    const GroundTruth* ground_truth = nullptr);
LoadedInstance read_instance(const std::filesystem::path& path);

/// Solve report for the CLI: estimate, objective, certificate and counters.
/// `status_override` replaces the branch-and-bound status for methods that
/// carry no certificate.
std::string solution_to_json(const Solution& sol, const std::string& method,
                             std::optional<double> rel_error = std::nullopt,
                             std::optional<std::string> status_override = std::nullopt);

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite.
std::string format_double(double v);

}  // namespace ccvmin
