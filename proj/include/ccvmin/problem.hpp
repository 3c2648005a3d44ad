#pragma once

#include <algorithm>
#include <cmath>

#include "ccvmin/svd.hpp"
#include "ccvmin/types.hpp"

namespace ccvmin {

/// Width below which a rectangle coordinate is treated as a point and never
/// branched on.
inline constexpr double kDegenerateWidth = 1e-14;

/// The pair (a, y): y is an unknown permutation of noisy linear measurements
/// a_i^T x of an unknown signal x.
struct ProblemInstance {
  Matrixd a;  // m x n
  Vectord y;  // m

  Index m() const { return a.rows(); }
  Index n() const { return a.cols(); }

  void validate() const {
    if (a.cols() < 1 || a.rows() < a.cols())
      throw InvalidInput("ProblemInstance: require m >= n >= 1");
    if (y.size() != a.rows()) throw InvalidInput("ProblemInstance: y length != rows of a");
    if (!a.allFinite() || !y.allFinite())
      throw InvalidInput("ProblemInstance: non-finite entries");
    if (!(y.norm() > 0)) throw InvalidInput("ProblemInstance: y is zero");
  }
};

/// Normalized observation and singular basis of a; every bound computation
/// reads from this. Immutable after construction.
struct Preprocessed {
  Vectord y_bar;    // y / |y|, unit
  double y_norm = 0;
  Matrixd u_a;      // m x r, orthonormal columns
  Vectord sigma_a;  // r, for signal recovery
  Matrixd v_a;      // n x r
  Index rank = 0;
  std::vector<int> y_bar_order;  // indices of y_bar in ascending value order
};

inline Preprocessed preprocess(const ProblemInstance& inst, double rank_tol = 1e-10) {
  inst.validate();
  const auto svd = thin_svd(inst.a, rank_tol);
  Preprocessed prep;
  prep.y_norm = inst.y.norm();
  prep.y_bar = inst.y / prep.y_norm;
  prep.u_a = svd.u;
  prep.sigma_a = svd.sigma;
  prep.v_a = svd.v;
  prep.rank = svd.rank;
  prep.y_bar_order.resize(static_cast<std::size_t>(inst.m()));
  std::iota(prep.y_bar_order.begin(), prep.y_bar_order.end(), 0);
  std::stable_sort(prep.y_bar_order.begin(), prep.y_bar_order.end(),
                   [&](int a, int b) { return prep.y_bar[a] < prep.y_bar[b]; });
  return prep;
}

/// Axis-aligned box [lo, hi] in R^r, the branch-and-bound search region.
struct Rectangle {
  Vectord lo;
  Vectord hi;

  Index dim() const { return lo.size(); }
  Vectord widths() const { return hi - lo; }
  Vectord midpoint() const { return 0.5 * (lo + hi); }

  bool contains(const Vectord& z, double slack = 0) const {
    return (z.array() >= lo.array() - slack).all() &&
           (z.array() <= hi.array() + slack).all();
  }
};

/// f(P) = -|u_a^T P y_bar|^2, the concave objective in [-1, 0]. Relates to
/// the least-squares residual by |Py - proj(Py)|^2 = |y|^2 (1 + f(P)).
inline double objective_f(const Permutation& pi, const Preprocessed& prep) {
  const Vectord py = pi.apply(prep.y_bar);
  const double s = (prep.u_a.transpose() * py).squaredNorm();
  return std::clamp(-s, -1.0, 0.0);
}

/// Smallest box containing every z(P) with z_i(P) = <P y_bar, u_i>; since the
/// box of a convex hull equals the box of its vertices, it also contains the
/// image of the doubly stochastic relaxation. Computed by 2r sorting
/// problems via the rearrangement inequality.
inline Rectangle initial_rectangle(const Preprocessed& prep) {
  const Index r = prep.rank;
  Vectord y_asc = prep.y_bar;
  std::sort(y_asc.begin(), y_asc.end());
  const Vectord y_desc = y_asc.reverse();

  Rectangle rect{Vectord(r), Vectord(r)};
  for (Index i = 0; i < r; ++i) {
    Vectord u_asc = prep.u_a.col(i);
    std::sort(u_asc.begin(), u_asc.end());
    rect.hi[i] = y_asc.dot(u_asc);
    rect.lo[i] = y_desc.dot(u_asc);
  }
  return rect;
}

/// Signal estimate for a fixed permutation: the minimum-norm x with
/// sigma_a * v_a^T x = u_a^T P y. Unique least-squares estimate when r = n.
inline Vectord recover_signal(const Permutation& pi, const ProblemInstance& inst,
                              const Preprocessed& prep) {
  const Vectord w = prep.u_a.transpose() * pi.apply(inst.y);
  return prep.v_a * w.cwiseQuotient(prep.sigma_a);
}

}  // namespace ccvmin
