#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "ccvmin/types.hpp"

namespace ccvmin {

/// Square cost matrix for lap_max; entry (i, j) is the gain of assigning
/// source j to slot i.
using CostMatrix = Matrixd;

struct Assignment {
  Permutation perm;
  double value = 0;
};

namespace detail {

template <class ScalarT>
std::vector<Index> ascending_order(const VectorT<ScalarT>& v) {
  std::vector<Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Index(0));
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) { return v[a] < v[b]; });
  return idx;
}

}  // namespace detail

/// Exact linear assignment maximizing sum_i cost(i, perm(i)), O(m^3).
/// Shortest augmenting paths with dual updates on the negated matrix.
template <class Derived>
Assignment lap_max(const Eigen::MatrixBase<Derived>& cost) {
  if (cost.rows() != cost.cols()) throw InvalidInput("lap_max: cost matrix must be square");
  if (!cost.allFinite()) throw InvalidInput("lap_max: cost matrix must be finite");
  const Matrixd c = -cost;  // minimize
  const int m = static_cast<int>(c.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> u(m, 0.0), v(m, 0.0), shortest(m);
  std::vector<int> pred(m), row_of_col(m, -1), col_of_row(m, -1), remaining(m);
  std::vector<char> scanned_row(m), scanned_col(m);

  for (int cur = 0; cur < m; ++cur) {
    std::fill(shortest.begin(), shortest.end(), kInf);
    std::fill(scanned_row.begin(), scanned_row.end(), 0);
    std::fill(scanned_col.begin(), scanned_col.end(), 0);
    std::iota(remaining.begin(), remaining.end(), 0);
    int num_remaining = m;
    double min_val = 0;
    int i = cur;
    int sink = -1;
    while (sink == -1) {
      scanned_row[i] = 1;
      int index = -1;
      double lowest = kInf;
      for (int it = 0; it < num_remaining; ++it) {
        const int j = remaining[it];
        const double r = min_val + c(i, j) - u[i] - v[j];
        if (r < shortest[j]) {
          pred[j] = i;
          shortest[j] = r;
        }
        if (shortest[j] < lowest || (shortest[j] == lowest && row_of_col[j] == -1)) {
          lowest = shortest[j];
          index = it;
        }
      }
      min_val = lowest;
      const int j = remaining[index];
      if (row_of_col[j] == -1) sink = j;
      else i = row_of_col[j];
      scanned_col[j] = 1;
      remaining[index] = remaining[--num_remaining];
    }

    u[cur] += min_val;
    for (int k = 0; k < m; ++k)
      if (scanned_row[k] && k != cur) u[k] += min_val - shortest[col_of_row[k]];
    for (int j = 0; j < m; ++j)
      if (scanned_col[j]) v[j] += shortest[j] - min_val;

    int j = sink;
    while (true) {
      const int k = pred[j];
      row_of_col[j] = k;
      std::swap(col_of_row[k], j);
      if (k == cur) break;
    }
  }

  Assignment out;
  out.perm = Permutation(col_of_row);
  for (int k = 0; k < m; ++k) out.value += cost(k, col_of_row[static_cast<std::size_t>(k)]);
  return out;
}

/// Maximizes sum_i c_i * y_{perm(i)}, the assignment problem with the
/// rank-one cost c_i * y_j: sort both vectors ascending and pair equal ranks
/// (rearrangement inequality). Stable sorts make tied optima deterministic.
inline Assignment rank_one_lap_max(const Vectord& c, const Vectord& y) {
  if (c.size() != y.size()) throw InvalidInput("rank_one_lap_max: length mismatch");
  if (!c.allFinite() || !y.allFinite()) throw InvalidInput("rank_one_lap_max: non-finite input");
  const auto idx_c = detail::ascending_order(c);
  const auto idx_y = detail::ascending_order(y);
  std::vector<int> map(static_cast<std::size_t>(c.size()));
  double value = 0;
  for (std::size_t k = 0; k < map.size(); ++k) {
    map[static_cast<std::size_t>(idx_c[k])] = static_cast<int>(idx_y[k]);
    value += c[idx_c[k]] * y[idx_y[k]];
  }
  return {Permutation(std::move(map)), value};
}

/// Permutation minimizing sum_i (p_{perm(i)} - q_i)^2: k-th smallest entry of
/// p goes to the slot of the k-th smallest entry of q.
inline Permutation match_1d(const Vectord& p, const Vectord& q) {
  if (p.size() != q.size()) throw InvalidInput("match_1d: length mismatch");
  const auto idx_p = detail::ascending_order(p);
  const auto idx_q = detail::ascending_order(q);
  std::vector<int> map(static_cast<std::size_t>(p.size()));
  for (std::size_t k = 0; k < map.size(); ++k)
    map[static_cast<std::size_t>(idx_q[k])] = static_cast<int>(idx_p[k]);
  return Permutation(std::move(map));
}

}  // namespace ccvmin
