#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "ccvmin/bounds.hpp"
#include "ccvmin/problem.hpp"
#include "ccvmin/rng.hpp"

namespace ccvmin {

struct OracleResult {
  Permutation pi_star;
  double f_star = 0;
  Vectord x_star;
};

/// Exhaustive minimization of f over all m! permutations. Ground truth for
/// every other solver; guarded at m <= 9.
inline OracleResult brute_force(const ProblemInstance& inst, double rank_tol = 1e-10) {
  inst.validate();
  if (inst.m() > 9)
    throw InvalidInput("brute_force: m = " + std::to_string(inst.m()) +
                       " exceeds the m <= 9 guard");
  const Preprocessed prep = preprocess(inst, rank_tol);
  std::vector<int> map(static_cast<std::size_t>(inst.m()));
  std::iota(map.begin(), map.end(), 0);
  OracleResult out;
  out.f_star = std::numeric_limits<double>::infinity();
  do {
    const Permutation pi(map);
    const double f = objective_f(pi, prep);
    if (f < out.f_star) {
      out.f_star = f;
      out.pi_star = pi;
    }
  } while (std::next_permutation(map.begin(), map.end()));
  out.x_star = recover_signal(out.pi_star, inst, prep);
  return out;
}

struct Solve1dResult {
  Permutation pi;
  double x = 0;
  double residual = 0;
};

/// Exact MLE for one-dimensional signals in O(m log m): for each sign of x
/// the rearrangement inequality pins the optimal matching, so two sorted
/// matchings with closed-form 1-D least squares cover the optimum.
inline Solve1dResult solve_1d(const Vectord& y, const Vectord& a) {
  if (y.size() != a.size()) throw InvalidInput("solve_1d: length mismatch");
  if (!(a.norm() > 0)) throw InvalidInput("solve_1d: a is zero");
  const double a2 = a.squaredNorm();

  auto candidate = [&](const Vectord& target) {
    Solve1dResult cand;
    cand.pi = match_1d(y, target);
    const Vectord py = cand.pi.apply(y);
    cand.x = py.dot(a) / a2;
    cand.residual = (py - cand.x * a).norm();
    return cand;
  };
  const Solve1dResult ascending = candidate(a);    // x >= 0 branch
  const Solve1dResult descending = candidate(-a);  // x <= 0 branch
  return ascending.residual <= descending.residual ? ascending : descending;
}

/// Alternating minimization from `restarts` random permutations plus the
/// identity; returns the best run. Sensitive to initialization, hence the
/// multistart; no optimality guarantee.
inline UpperBound am_multistart(const ProblemInstance& inst, int restarts, std::uint64_t seed,
                                int max_iters = 100, double rel_tol = 1e-9) {
  if (restarts < 1) throw InvalidInput("am_multistart: restarts must be >= 1");
  inst.validate();
  const Preprocessed prep = preprocess(inst);
  Rng rng(seed);
  UpperBound best = alternating_minimization(Permutation::identity(static_cast<int>(inst.m())),
                                             inst, prep, max_iters, rel_tol);
  for (int s = 0; s < restarts; ++s) {
    const Permutation start = random_permutation(static_cast<int>(inst.m()), rng);
    const UpperBound run = alternating_minimization(start, inst, prep, max_iters, rel_tol);
    if (run.value < best.value) best = run;
  }
  return best;
}

}  // namespace ccvmin
