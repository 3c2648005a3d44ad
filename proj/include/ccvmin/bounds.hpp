#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ccvmin/assignment.hpp"
#include "ccvmin/problem.hpp"

namespace ccvmin {

/// Convex envelope of g(z) = -sum z_i^2 over the box [lo, hi], evaluated at
/// z: the affine interpolant through the interval endpoints,
/// sum lo_i hi_i - sum (lo_i + hi_i) z_i. Agrees with g at every corner.
inline double envelope_value(const Rectangle& rect, const Vectord& z) {
  if (z.size() != rect.dim()) throw InvalidInput("envelope_value: dimension mismatch");
  return rect.lo.dot(rect.hi) - (rect.lo + rect.hi).dot(z);
}

enum class BoundBackend {
  kRankOneSort,  // sorting, O(m log m); the cost matrix is rank one
  kGeneralLap,   // O(m^3) assignment on the materialized cost, cross-check path
};

struct LowerBound {
  double bound = 0;      // valid lower bound of f over the feasible part of rect
  Permutation witness;   // permutation attaining the assignment optimum
  double lap_value = 0;  // optimum of the relaxed assignment program
};

namespace detail {

// rank_one_lap_max with the y-side sort taken from the preprocessed cache;
// the hot path of every branch-and-bound node.
inline Assignment rank_one_lap_max_cached(const Vectord& c, const Vectord& y,
                                          const std::vector<int>& y_order) {
  const auto idx_c = ascending_order(c);
  std::vector<int> map(static_cast<std::size_t>(c.size()));
  double value = 0;
  for (std::size_t k = 0; k < map.size(); ++k) {
    map[static_cast<std::size_t>(idx_c[k])] = y_order[k];
    value += c[idx_c[k]] * y[y_order[k]];
  }
  return {Permutation(std::move(map)), value};
}

}  // namespace detail

/// Minimizes the envelope over the doubly stochastic relaxation: with
/// c = u_a (lo + hi), the minimum is sum lo_i hi_i minus the assignment
/// maximum of <P y_bar, c>, attained at a permutation vertex. The witness
/// seeds the incumbent and alternating minimization.
inline LowerBound lower_bound(const Rectangle& rect, const Preprocessed& prep,
                              BoundBackend backend = BoundBackend::kRankOneSort) {
  const Vectord c = prep.u_a * (rect.lo + rect.hi);
  const bool cached = prep.y_bar_order.size() == static_cast<std::size_t>(prep.y_bar.size());
  Assignment best = backend != BoundBackend::kRankOneSort
                        ? lap_max((c * prep.y_bar.transpose()).eval())
                    : cached ? detail::rank_one_lap_max_cached(c, prep.y_bar, prep.y_bar_order)
                             : rank_one_lap_max(c, prep.y_bar);
  return {rect.lo.dot(rect.hi) - best.value, std::move(best.perm), best.value};
}

struct UpperBound {
  Permutation pi;
  double value = 0;  // f(pi)
  int iterations = 0;
  std::vector<double> residuals;  // non-increasing; [0] is the start residual
};

/// Alternating minimization of |P y - a x|: exact least squares in x, exact
/// 1-D sorted matching in P. Stops when the residual decrease falls below
/// rel_tol relatively, or after max_iters. The residual never increases, so
/// the returned f is at most f(pi0).
inline UpperBound alternating_minimization(const Permutation& pi0, const ProblemInstance& inst,
                                           const Preprocessed& prep, int max_iters = 100,
                                           double rel_tol = 1e-9) {
  if (pi0.size() != inst.m()) throw InvalidInput("alternating_minimization: bad start");
  UpperBound out;
  out.pi = pi0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= max_iters; ++it) {
    const Vectord w = prep.u_a.transpose() * out.pi.apply(inst.y);
    const Vectord x = prep.v_a * w.cwiseQuotient(prep.sigma_a);
    const Vectord ax = inst.a * x;
    if (it == 1) {
      prev = (out.pi.apply(inst.y) - ax).norm();
      out.residuals.push_back(prev);
    }
    out.pi = match_1d(inst.y, ax);
    const double res = (out.pi.apply(inst.y) - ax).norm();
    out.residuals.push_back(res);
    out.iterations = it;
    if (prev - res <= rel_tol * std::max(prev, 1e-300)) break;
    prev = res;
  }
  out.value = objective_f(out.pi, prep);
  return out;
}

}  // namespace ccvmin
