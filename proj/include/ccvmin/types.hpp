#pragma once

#include <Eigen/Dense>

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccvmin {

template <class ScalarT>
using MatrixT = Eigen::Matrix<ScalarT, Eigen::Dynamic, Eigen::Dynamic>;
template <class ScalarT>
using VectorT = Eigen::Matrix<ScalarT, Eigen::Dynamic, 1>;

/// Solver-wide scalar type. All concrete solver state uses this.
using Scalar = double;
using Matrixd = MatrixT<Scalar>;
using Vectord = VectorT<Scalar>;
using Index = Eigen::Index;

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RankZeroError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateSplitError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A permutation of {0,...,m-1} in "gather" form: map(i) = j means entry i of
/// the permuted vector takes entry j of the source, (P v)_i = v_{map(i)}.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> map) : map_(std::move(map)) {
    std::vector<char> seen(map_.size(), 0);
    for (int j : map_) {
      if (j < 0 || j >= static_cast<int>(map_.size()) || seen[j])
        throw InvalidInput("Permutation: map is not a bijection");
      seen[j] = 1;
    }
  }

  static Permutation identity(int m) {
    std::vector<int> map(static_cast<std::size_t>(m));
    std::iota(map.begin(), map.end(), 0);
    return Permutation(std::move(map));
  }

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& map() const { return map_; }

  template <class Derived>
  VectorT<typename Derived::Scalar> apply(
      const Eigen::MatrixBase<Derived>& v) const {
    if (v.size() != size())
      throw InvalidInput("Permutation::apply: length mismatch");
    VectorT<typename Derived::Scalar> out(v.size());
    for (int i = 0; i < size(); ++i) out[i] = v[map_[static_cast<std::size_t>(i)]];
    return out;
  }

  Permutation inverse() const {
    std::vector<int> inv(map_.size());
    for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(map_[static_cast<std::size_t>(i)])] = i;
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.map_ == b.map_;
  }

 private:
  std::vector<int> map_;
};

}  // namespace ccvmin
