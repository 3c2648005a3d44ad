#include <doctest.h>

#include "ccvmin/bounds.hpp"
#include "ccvmin/synthetic.hpp"
#include "test_util.hpp"

using namespace ccvmin;
using ccvmin::testing::for_each_permutation;
using ccvmin::testing::random_instance;
using ccvmin::testing::random_vector;
using ccvmin::testing::z_of_permutation;

namespace {

double g_of(const Vectord& z) { return -z.squaredNorm(); }

Rectangle random_rectangle(Index r, Rng& rng) {
  Rectangle rect{Vectord(r), Vectord(r)};
  for (Index i = 0; i < r; ++i) {
    const double a = 2.0 * rng.normal();
    const double b = 2.0 * rng.normal();
    rect.lo[i] = std::min(a, b);
    rect.hi[i] = std::max(a, b);
  }
  return rect;
}

Preprocessed two_point_prep() {
  Preprocessed prep;
  prep.y_bar = Vectord{{0.6, 0.8}};
  prep.y_norm = 1;
  prep.u_a = Matrixd{{1}, {0}};
  prep.rank = 1;
  return prep;
}

}  // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("envelope: direct evaluations") {
  CHECK(envelope_value({Vectord{{-1}}, Vectord{{2}}}, Vectord{{0}}) == doctest::Approx(-2.0));
  CHECK(envelope_value({Vectord{{0}}, Vectord{{2}}}, Vectord{{1}}) == doctest::Approx(-2.0));
  CHECK(g_of(Vectord{{1}}) >= -2.0);
  CHECK_THROWS_AS(envelope_value({Vectord{{0}}, Vectord{{1}}}, Vectord{{0, 0}}), InvalidInput);
}

TEST_CASE("envelope minorizes g with equality at every corner") {
  Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index r = 1 + rng.uniform_int(5);
    const Rectangle rect = random_rectangle(r, rng);
    Vectord z(r);
    for (Index i = 0; i < r; ++i)
      z[i] = rect.lo[i] + (rect.hi[i] - rect.lo[i]) * rng.uniform01();
    CHECK(envelope_value(rect, z) <= g_of(z) + 1e-12);
    for (unsigned corner = 0; corner < (1u << r); ++corner) {
      Vectord c(r);
      for (Index i = 0; i < r; ++i) c[i] = (corner >> i) & 1u ? rect.hi[i] : rect.lo[i];
      CHECK(std::abs(envelope_value(rect, c) - g_of(c)) <= 1e-12);
    }
  }
}

TEST_CASE("lower bound: two-point instance, arithmetic forced") {
  const Preprocessed prep = two_point_prep();
  const LowerBound lb = lower_bound({Vectord{{0.6}}, Vectord{{0.8}}}, prep);
  CHECK(lb.lap_value == doctest::Approx(1.12).epsilon(1e-15));
  CHECK(lb.bound == doctest::Approx(-0.64).epsilon(1e-15));
  // -0.64 = g at the better vertex: the bound is the exact minimum here
  CHECK(objective_f(lb.witness, prep) == doctest::Approx(-0.64).epsilon(1e-15));
}

TEST_CASE("lower bound: exact on the zero-width box at an extreme vertex") {
  const Preprocessed prep = two_point_prep();
  // z = 0.8 is the rearrangement-maximal vertex of its coordinate
  const LowerBound lb = lower_bound({Vectord{{0.8}}, Vectord{{0.8}}}, prep);
  CHECK(lb.bound == doctest::Approx(-0.64).epsilon(1e-15));
}

TEST_CASE("lower bound holds over every permutation of random instances") {
  Rng rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    const ProblemInstance inst = random_instance(6, 2, rng);
    const Preprocessed prep = preprocess(inst);
    const Rectangle root = initial_rectangle(prep);
    const LowerBound lb = lower_bound(root, prep);
    double f_min = 0;
    for_each_permutation(6, [&](const Permutation& pi) {
      f_min = std::min(f_min, objective_f(pi, prep));
    });
    CHECK(lb.bound <= f_min + 1e-12);
    CHECK(objective_f(lb.witness, prep) >= lb.bound - 1e-12);  // sandwich
  }
}

TEST_CASE("bound backends agree") {
  Rng rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    const ProblemInstance inst = random_instance(8, 3, rng);
    const Preprocessed prep = preprocess(inst);
    Rectangle rect = initial_rectangle(prep);
    if (trial % 2) rect.hi = rect.midpoint();  // sub-rectangles too
    const LowerBound fast = lower_bound(rect, prep, BoundBackend::kRankOneSort);
    const LowerBound general = lower_bound(rect, prep, BoundBackend::kGeneralLap);
    CHECK(fast.bound == doctest::Approx(general.bound).epsilon(1e-12));
  }
}

TEST_CASE("alternating minimization: fixed point returns immediately") {
  const auto [inst, truth] = generate({24, 3, 1.0, std::numeric_limits<double>::infinity(), 19});
  const Preprocessed prep = preprocess(inst);
  const Permutation pi0 = truth.pi_star.inverse();
  const UpperBound ub = alternating_minimization(pi0, inst, prep);
  CHECK(ub.iterations == 1);
  CHECK(ub.pi == pi0);
  CHECK(ub.value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("alternating minimization: residuals never increase") {
  Rng rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 4 + rng.uniform_int(20);
    const int n = 1 + rng.uniform_int(std::min(m / 2, 4));
    const ProblemInstance inst = random_instance(m, n, rng);
    const Preprocessed prep = preprocess(inst);
    const Permutation pi0 = random_permutation(m, rng);
    const UpperBound ub = alternating_minimization(pi0, inst, prep);
    REQUIRE(ub.residuals.size() >= 2);
    for (std::size_t k = 1; k < ub.residuals.size(); ++k)
      CHECK(ub.residuals[k] <= ub.residuals[k - 1] + 1e-12);
    CHECK(ub.value <= objective_f(pi0, prep) + 1e-12);
    CHECK(ub.value >= -1.0);
    CHECK(ub.value <= 0.0);
  }
}

TEST_CASE("alternating minimization: noiseless run terminates and improves") {
  const auto [inst, truth] = generate({40, 3, 1.0, std::numeric_limits<double>::infinity(), 23});
  const Preprocessed prep = preprocess(inst);
  const Permutation pi0 = Permutation::identity(40);
  const UpperBound ub = alternating_minimization(pi0, inst, prep, 100, 1e-9);
  CHECK(ub.iterations <= 100);
  CHECK(ub.value <= objective_f(pi0, prep) + 1e-12);
}

TEST_SUITE_END();
