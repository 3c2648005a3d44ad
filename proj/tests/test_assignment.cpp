#include <doctest.h>

#include <limits>

#include "ccvmin/assignment.hpp"
#include "test_util.hpp"

using namespace ccvmin;
using ccvmin::testing::for_each_permutation;
using ccvmin::testing::random_vector;

namespace {

double enumerate_max(const Matrixd& cost) {
  double best = -std::numeric_limits<double>::infinity();
  for_each_permutation(static_cast<int>(cost.rows()), [&](const Permutation& pi) {
    double v = 0;
    for (int i = 0; i < pi.size(); ++i) v += cost(i, pi(i));
    best = std::max(best, v);
  });
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("assignment");

TEST_CASE("lap_max: dominant diagonal") {
  Matrixd c(2, 2);
  c << 1, 0, 0, 1;
  const Assignment res = lap_max(c);
  CHECK(res.value == doctest::Approx(2.0));
  CHECK(res.perm == Permutation::identity(2));
}

TEST_CASE("lap_max: tied optima still report the optimal value") {
  Matrixd c(2, 2);
  c << 1, 2, 3, 4;  // both permutations give 5
  const Assignment res = lap_max(c);
  CHECK(res.value == doctest::Approx(5.0));
  double check = 0;
  for (int i = 0; i < 2; ++i) check += c(i, res.perm(i));
  CHECK(check == doctest::Approx(res.value));
}

TEST_CASE("lap_max: 3x3 against enumeration") {
  Matrixd c(3, 3);
  c << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  const Assignment res = lap_max(c);
  CHECK(res.value == doctest::Approx(enumerate_max(c)));
}

TEST_CASE("lap_max: optimal on 200 random instances, m <= 7") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + rng.uniform_int(6);
    Matrixd c(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) c(i, j) = rng.normal();
    const Assignment res = lap_max(c);
    CHECK(res.value == doctest::Approx(enumerate_max(c)).epsilon(1e-12));
    double check = 0;
    for (int i = 0; i < m; ++i) check += c(i, res.perm(i));
    CHECK(check == doctest::Approx(res.value).epsilon(1e-12));
  }
}

TEST_CASE("lap_max: invalid inputs") {
  CHECK_THROWS_AS(lap_max(Matrixd::Zero(2, 3)), InvalidInput);
  Matrixd c(2, 2);
  c << 1, 2, 3, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(lap_max(c), InvalidInput);
}

TEST_CASE("rank_one_lap_max: two-point example") {
  const Assignment res = rank_one_lap_max(Vectord{{1, 2}}, Vectord{{0.8, 0.6}});
  CHECK(res.value == doctest::Approx(2.2).epsilon(1e-15));
  CHECK(res.perm(0) == 1);  // slot of c=1 takes 0.6
  CHECK(res.perm(1) == 0);  // slot of c=2 takes 0.8
}

TEST_CASE("rank_one_lap_max: constant c ties resolved by stable sort") {
  const Vectord c = Vectord::Constant(4, 2.5);
  const Vectord y{{0.1, 0.2, 0.3, 0.4}};  // already ascending
  const Assignment res = rank_one_lap_max(c, y);
  CHECK(res.perm == Permutation::identity(4));
  CHECK(res.value == doctest::Approx(2.5 * y.sum()).epsilon(1e-15));
}

TEST_CASE("rank_one_lap_max agrees with lap_max on rank-one costs") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + rng.uniform_int(6);
    const Vectord c = random_vector(m, rng);
    const Vectord y = random_vector(m, rng);
    const Assignment fast = rank_one_lap_max(c, y);
    const Assignment general = lap_max((c * y.transpose()).eval());
    CHECK(fast.value == doctest::Approx(general.value).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rank_one_lap_max(Vectord{{1}}, Vectord{{1, 2}}), InvalidInput);
}

TEST_CASE("match_1d: reversal and sorted fixed point") {
  CHECK(match_1d(Vectord{{3, 1}}, Vectord{{1, 3}}) == Permutation({1, 0}));
  const Vectord sorted{{-1, 0, 2, 5}};
  CHECK(match_1d(sorted, sorted) == Permutation::identity(4));
}

TEST_CASE("match_1d: optimal against enumeration") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + rng.uniform_int(5);
    const Vectord p = random_vector(m, rng);
    const Vectord q = random_vector(m, rng);
    const Permutation pi = match_1d(p, q);
    const double got = (pi.apply(p) - q).squaredNorm();
    double best = std::numeric_limits<double>::infinity();
    for_each_permutation(m, [&](const Permutation& cand) {
      best = std::min(best, (cand.apply(p) - q).squaredNorm());
    });
    CHECK(got == doctest::Approx(best).epsilon(1e-12));
  }
  CHECK_THROWS_AS(match_1d(Vectord{{1}}, Vectord{{1, 2}}), InvalidInput);
}

TEST_CASE("permutation bijectivity is enforced") {
  CHECK_THROWS_AS(Permutation({0, 0}), InvalidInput);
  CHECK_THROWS_AS(Permutation({0, 2}), InvalidInput);
  CHECK_THROWS_AS(Permutation({-1, 0}), InvalidInput);
}

TEST_SUITE_END();
