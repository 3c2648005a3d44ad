#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "ccvmin/assignment.hpp"
#include "ccvmin/problem.hpp"
#include "ccvmin/rng.hpp"

namespace ccvmin {

/// Synthetic instance recipe: standard normal a and x, a fraction alpha of
/// the rows shuffled, additive Gaussian noise at the given SNR.
struct SyntheticSpec {
  int m = 0;
  int n = 0;
  double alpha = 1.0;  // shuffled fraction, in [0, 1]
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

struct GroundTruth {
  Vectord x_star;
  Permutation pi_star;
  double sigma = 0;  // noise standard deviation
};

/// Noise level realizing snr_db = 10 log10(|a x|^2 / (m sigma^2)), i.e.
/// signal energy over expected noise energy.
inline double sigma_for_snr(double signal_norm, double snr_db, int m) {
  if (std::isinf(snr_db)) return 0.0;
  return signal_norm * std::pow(10.0, -snr_db / 20.0) / std::sqrt(static_cast<double>(m));
}

/// Draw order is fixed: entries of a row-major, then x, then the shuffled
/// subset, then the subset permutation, then noise. Identical specs give
/// bit-identical instances.
inline std::pair<ProblemInstance, GroundTruth> generate(const SyntheticSpec& spec) {
  if (spec.n < 1 || spec.m < spec.n) throw InvalidInput("generate: require m >= n >= 1");
  if (!(spec.alpha >= 0 && spec.alpha <= 1)) throw InvalidInput("generate: alpha must be in [0,1]");
  Rng rng(spec.seed);

  ProblemInstance inst;
  inst.a.resize(spec.m, spec.n);
  for (int i = 0; i < spec.m; ++i)
    for (int j = 0; j < spec.n; ++j) inst.a(i, j) = rng.normal();
  GroundTruth gt;
  gt.x_star.resize(spec.n);
  for (int j = 0; j < spec.n; ++j) gt.x_star[j] = rng.normal();

  const Vectord y0 = inst.a * gt.x_star;

  // Uniform subset of floor(alpha m) positions, then a uniform permutation of
  // that subset (which may fix some of its points); identity elsewhere.
  const int k = static_cast<int>(std::floor(spec.alpha * spec.m + 1e-9));
  std::vector<int> pool(static_cast<std::size_t>(spec.m));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i)
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(i + rng.uniform_int(spec.m - i))]);
  std::vector<int> subset(pool.begin(), pool.begin() + k);
  std::sort(subset.begin(), subset.end());

  std::vector<int> map(static_cast<std::size_t>(spec.m));
  std::iota(map.begin(), map.end(), 0);
  if (k > 1) {
    const Permutation rho = random_permutation(k, rng);
    for (int t = 0; t < k; ++t)
      map[static_cast<std::size_t>(subset[static_cast<std::size_t>(t)])] =
          subset[static_cast<std::size_t>(rho(t))];
  }
  gt.pi_star = Permutation(std::move(map));

  inst.y = gt.pi_star.apply(y0);
  gt.sigma = sigma_for_snr(y0.norm(), spec.snr_db, spec.m);
  if (gt.sigma > 0)
    for (int i = 0; i < spec.m; ++i) inst.y[i] += gt.sigma * rng.normal();
  return {std::move(inst), std::move(gt)};
}

/// |x_bar - x_star| / |x_star|.
inline double relative_error(const Vectord& x_bar, const Vectord& x_star) {
  if (x_bar.size() != x_star.size()) throw InvalidInput("relative_error: length mismatch");
  const double denom = x_star.norm();
  if (!(denom > 0)) throw InvalidInput("relative_error: x_star is zero");
  return (x_bar - x_star).norm() / denom;
}

/// min over permutations of |P y - a x_bar| / (m |y|); the minimizing P is a
/// 1-D sorted matching, no enumeration. Usable without ground truth.
inline double residual_error(const Vectord& x_bar, const ProblemInstance& inst) {
  const Vectord ax = inst.a * x_bar;
  const Permutation pi = match_1d(inst.y, ax);
  return (pi.apply(inst.y) - ax).norm() /
         (static_cast<double>(inst.m()) * inst.y.norm());
}

}  // namespace ccvmin
