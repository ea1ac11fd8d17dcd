#include "tsel/optimal.hpp"

#include <gtest/gtest.h>

#include <random>

#include "random_cdf.hpp"
#include "tsel/inversion.hpp"

namespace tsel {
namespace {

TEST(OptimalSameTest, MedianQuarter) {
  const SameTestOptimum o = optimal_same_test();
  EXPECT_EQ(o.threshold, Rational(1, 2));
  EXPECT_EQ(o.value, Rational(1, 4));
  for (double t : {0.0, 0.2, 0.49, 0.51, 0.8, 1.0}) {
    EXPECT_GT(inversion_iid(MixedCdf::step(t)).value, 0.25);
  }
}

TEST(OptimalCorrelated, TwoFirms) {
  const CorrelatedOptimum o = optimal_correlated(2);
  EXPECT_EQ(o.thresholds, (std::vector<Rational>{{1, 3}, {2, 3}}));
  EXPECT_EQ(o.value, Rational(1, 6));
}

TEST(OptimalCorrelated, ThreeFirms) {
  const CorrelatedOptimum o = optimal_correlated(3);
  EXPECT_EQ(o.thresholds,
            (std::vector<Rational>{{3, 10}, {5, 10}, {7, 10}}));
  EXPECT_EQ(inversion_fixed<Rational>(o.thresholds), Rational(11, 60));
}

TEST(OptimalCorrelated, StructureAndLimit) {
  for (long n = 2; n <= 30; ++n) {
    const CorrelatedOptimum o = optimal_correlated(n);
    ASSERT_EQ(o.thresholds.size(), static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      EXPECT_EQ(o.thresholds[i] + o.thresholds[n - 1 - i], Rational(1));
      if (i > 0) {
        EXPECT_LT(o.thresholds[i - 1], o.thresholds[i]);
      }
    }
    EXPECT_EQ(inversion_fixed<Rational>(o.thresholds), o.value);
  }
  const CorrelatedOptimum big = optimal_correlated(100'000);
  EXPECT_NEAR(to_double(big.thresholds.front()), 0.25, 1e-5);
  EXPECT_NEAR(to_double(big.thresholds.back()), 0.75, 1e-5);
  EXPECT_THROW(optimal_correlated(1), std::invalid_argument);
}

TEST(OptimalCorrelated, LocalOptimality) {
  for (long n : {2L, 3L, 5L, 8L}) {
    const std::vector<double> base = optimal_correlated(n).thresholds_as_double();
    const double value = inversion_fixed<double>(base);
    for (std::size_t i = 0; i < base.size(); ++i) {
      for (double step : {-1e-3, 1e-3}) {
        std::vector<double> moved = base;
        moved[i] += step;
        if (!std::is_sorted(moved.begin(), moved.end())) continue;
        EXPECT_GE(inversion_fixed<double>(moved), value);
      }
    }
  }
}

TEST(OptimalIid, UniformQuarterToThreeQuarters) {
  const MixedCdf d = optimal_iid();
  EXPECT_EQ(d.cdf(0.25), 0.0);
  EXPECT_DOUBLE_EQ(d.cdf(0.5), 0.5);
  for (double x = 0.25; x <= 0.75; x += 0.01) {
    EXPECT_NEAR(d.cdf(x), 2 * x - 0.5, 1e-15);
  }
  EXPECT_NEAR(inversion_iid(d).value, 5.0 / 24.0, 1e-8);
}

TEST(OptimalIid, BeatsRandomPerturbations) {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 100; ++i) {
    const MixedCdf d = testing::random_piecewise_linear(rng).build();
    const double value = inversion_iid(d).value;
    EXPECT_GE(value, 5.0 / 24.0 - 1e-10);
    if (suboptimality_bound(d).epsilon > 1e-3) {
      EXPECT_GT(value, 5.0 / 24.0);
    }
  }
}

}  // namespace
}  // namespace tsel
