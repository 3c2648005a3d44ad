#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ccvmin/types.hpp"

namespace ccvmin {

/// Thin SVD a = u * sigma.asDiagonal() * v^T truncated to the numerical rank.
template <class ScalarT>
struct ThinSvdT {
  MatrixT<ScalarT> u;      // m x r, orthonormal columns
  VectorT<ScalarT> sigma;  // r, positive, non-increasing
  MatrixT<ScalarT> v;      // n x r, orthonormal columns
  Index rank = 0;
};
using ThinSvd = ThinSvdT<Scalar>;

namespace detail {

/// Cyclic Jacobi eigendecomposition of a symmetric matrix, in place.
/// On return `g` is (numerically) diagonal and `vecs` holds the accumulated
/// rotations, g_in = vecs * g * vecs^T.
template <class ScalarT>
inline void jacobi_eigen_symmetric(MatrixT<ScalarT>& g, MatrixT<ScalarT>& vecs) {
  const Index n = g.rows();
  vecs = MatrixT<ScalarT>::Identity(n, n);
  if (n < 2) return;
  const ScalarT tol =
      std::numeric_limits<ScalarT>::epsilon() * std::max<ScalarT>(g.norm(), ScalarT(1e-300));
  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (std::abs(g(p, q)) <= tol) continue;
        Eigen::JacobiRotation<ScalarT> rot;
        rot.makeJacobi(g, p, q);
        g.applyOnTheLeft(p, q, rot.transpose());
        g.applyOnTheRight(p, q, rot);
        vecs.applyOnTheRight(p, q, rot);
        rotated = true;
      }
    }
    if (!rotated) break;
  }
}

}  // namespace detail

/// Thin SVD of a small dense matrix via the eigendecomposition of the n x n
/// Gram matrix a^T a, followed by one modified Gram-Schmidt pass on the left
/// factor. Singular values are refreshed as |a v_i| and columns of v are
/// sign-normalized so their largest-magnitude entry is positive.
///
/// `rank_tol` is relative to the largest singular value; columns below it are
/// truncated. Throws InvalidInput for non-finite input, RankZeroError when a
/// is all zero.
template <class Derived>
ThinSvdT<typename Derived::Scalar> thin_svd(const Eigen::MatrixBase<Derived>& a,
                                            typename Derived::Scalar rank_tol = 1e-10) {
  using ScalarT = typename Derived::Scalar;
  if (a.rows() < 1 || a.cols() < 1) throw InvalidInput("thin_svd: empty matrix");
  if (!a.allFinite()) throw InvalidInput("thin_svd: non-finite entries");
  if (!(rank_tol > 0 && rank_tol < 1)) throw InvalidInput("thin_svd: rank_tol must be in (0,1)");

  const Index n = a.cols();
  MatrixT<ScalarT> gram = a.transpose() * a;
  MatrixT<ScalarT> vecs;
  detail::jacobi_eigen_symmetric(gram, vecs);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return gram(i, i) > gram(j, j); });

  // Refresh singular values from a itself; sqrt of a Gram eigenvalue loses
  // accuracy for the small ones.
  VectorT<ScalarT> sigma_all(n);
  MatrixT<ScalarT> v_all(n, n);
  for (Index k = 0; k < n; ++k) {
    VectorT<ScalarT> vk = vecs.col(order[static_cast<std::size_t>(k)]);
    Index imax = 0;
    vk.cwiseAbs().maxCoeff(&imax);
    if (vk[imax] < 0) vk = -vk;
    v_all.col(k) = vk;
    sigma_all[k] = (a * vk).norm();
  }

  const ScalarT sigma_max = sigma_all.maxCoeff();
  if (!(sigma_max > 0)) throw RankZeroError("thin_svd: matrix is zero, rank 0");

  std::vector<Index> keep(static_cast<std::size_t>(n));
  std::iota(keep.begin(), keep.end(), Index(0));
  std::stable_sort(keep.begin(), keep.end(),
                   [&](Index i, Index j) { return sigma_all[i] > sigma_all[j]; });

  Index r = 0;
  while (r < n && sigma_all[keep[static_cast<std::size_t>(r)]] > rank_tol * sigma_max) ++r;

  ThinSvdT<ScalarT> out;
  out.rank = r;
  out.sigma.resize(r);
  out.v.resize(n, r);
  out.u.resize(a.rows(), r);
  for (Index k = 0; k < r; ++k) {
    const Index src = keep[static_cast<std::size_t>(k)];
    out.sigma[k] = sigma_all[src];
    out.v.col(k) = v_all.col(src);
    out.u.col(k) = a * v_all.col(src) / sigma_all[src];
  }
  // One MGS pass restores orthogonality lost to the squared conditioning of
  // the Gram matrix.
  for (Index k = 0; k < r; ++k) {
    for (Index j = 0; j < k; ++j)
      out.u.col(k) -= out.u.col(j).dot(out.u.col(k)) * out.u.col(j);
    out.u.col(k).normalize();
  }
  return out;
}

/// Minimum-norm least-squares solution of a x = b via the thin-SVD
/// pseudo-inverse. Exact for consistent full-rank systems.
template <class DerivedA, class DerivedB>
VectorT<typename DerivedA::Scalar> least_squares(const Eigen::MatrixBase<DerivedA>& a,
                                                 const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.size()) throw InvalidInput("least_squares: dimension mismatch");
  const auto svd = thin_svd(a);
  VectorT<typename DerivedA::Scalar> w = svd.u.transpose() * b;
  return svd.v * w.cwiseQuotient(svd.sigma);
}

/// Columns of the Kronecker product y_bar (x) u_a: column i is y_bar (x) u_i,
/// an orthonormal family of size m^2 x r. These are the right singular
/// vectors, with unit singular values, of the r x m^2 matrix
/// y_bar^T (x) u_a^T; the bounding code never materializes that matrix.
template <class DerivedY, class DerivedU>
MatrixT<typename DerivedU::Scalar> kron_singular_basis(const Eigen::MatrixBase<DerivedY>& y_bar,
                                                       const Eigen::MatrixBase<DerivedU>& u_a) {
  using ScalarT = typename DerivedU::Scalar;
  const Index m = y_bar.size();
  if (u_a.rows() != m) throw InvalidInput("kron_singular_basis: dimension mismatch");
  if (std::abs(y_bar.norm() - ScalarT(1)) > ScalarT(1e-12))
    throw InvalidInput("kron_singular_basis: y_bar must be a unit vector");
  MatrixT<ScalarT> out(m * m, u_a.cols());
  for (Index k = 0; k < m; ++k) out.middleRows(k * m, m) = y_bar[k] * u_a;
  return out;
}

}  // namespace ccvmin
