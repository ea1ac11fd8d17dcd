#include "tsel/equilibrium.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "random_cdf.hpp"
#include "tsel/inversion.hpp"
#include "tsel/monte_carlo.hpp"
#include "tsel/optimal.hpp"

namespace tsel {
namespace {

std::vector<MixedCdf> opponents() {
  std::vector<MixedCdf> out = {
      MixedCdf::uniform(0.25, 0.75), MixedCdf::step(0.5), MixedCdf::step(0.0),
      MixedCdf::step(1.0), equilibrium_unrestricted().dist,
      equilibrium_interval(0.1, 0.9).dist, equilibrium_interval(0.0, 0.79).dist};
  std::mt19937_64 rng(55);
  for (int i = 0; i < 15; ++i) {
    out.push_back(testing::random_piecewise_linear(rng).build());
  }
  return out;
}

TEST(WinProbabilities, ZeroThreshold) {
  for (const MixedCdf& d : {MixedCdf::uniform(0.25, 0.75),
                            equilibrium_unrestricted().dist,
                            MixedCdf::step(0.6)}) {
    const PayoffProfile p = win_probabilities(0.0, d);
    EXPECT_EQ(p.win_fail, 0.0);
    EXPECT_NEAR(p.win_pass, d.failure_probability(), 1e-15);
    EXPECT_NEAR(p.win_total, d.failure_probability(), 1e-15);
  }
}

TEST(WinProbabilities, IdenticalStepIsHalf) {
  EXPECT_NEAR(win_probabilities(0.5, MixedCdf::step(0.5)).win_total, 0.5,
              1e-15);
}

TEST(WinProbabilities, HalfAgainstUnrestrictedEquilibrium) {
  const MixedCdf eq = equilibrium_unrestricted().dist;
  for (int k = 0; k <= 1000; ++k) {
    EXPECT_NEAR(win_probabilities(k / 1000.0, eq).win_total, 0.5, 1e-9);
  }
}

TEST(WinProbabilities, ConsistencyOrderingAndDirectOracle) {
  for (const MixedCdf& d : opponents()) {
    std::vector<std::pair<double, double>> atoms;
    for (const Atom& a : d.atoms()) atoms.emplace_back(a.location, a.mass);
    const std::vector<double> cuts = d.breakpoints();
    const bool degenerate = d.atoms().size() == 1 && d.atoms()[0].mass == 1.0;
    for (double theta : {0.0, 0.05, 0.3, 0.5, 0.61, 0.9, 1.0}) {
      const PayoffProfile p = win_probabilities(theta, d);
      EXPECT_NEAR(p.win_total, selection_probability(theta, d), 1e-12);
      if (!degenerate && theta > 0.0 && theta < 1.0) {
        EXPECT_GT(p.win_pass, p.win_fail);
      }
      const double direct = oracle::selection_probability_direct(
          theta,
          [&](double s) {
            const auto v = d.density(s);
            return v ? *v : 0.0;
          },
          atoms, cuts);
      EXPECT_NEAR(p.win_total, direct, 1e-9) << theta;
    }
  }
}

TEST(SelectionProbability, StepAtHalfHardDeviation) {
  EXPECT_NEAR(selection_probability(0.9, MixedCdf::step(0.5)), 0.55, 1e-15);
  const SimulationSummary s = simulate(
      AssignmentRule::independent({MixedCdf::step(0.9), MixedCdf::step(0.5)}),
      2, {1'000'000, 21, 0});
  EXPECT_NEAR(s.first_rate[0], 0.55, 3.0 * s.first_rate_std_error[0]);
}

TEST(SelectionProbability, OnSupportValues) {
  EXPECT_NEAR(selection_probability(0.37, equilibrium_unrestricted().dist), 0.5,
              1e-9);
  for (double a : {0.0, 0.1, 0.25}) {
    const EquilibriumSolution sol = equilibrium_interval(a, 0.95);
    ASSERT_EQ(sol.regime, Regime::interior);
    EXPECT_NEAR(selection_probability(a, sol.dist), (1 - a) * sol.failure_prob,
                1e-12);
    EXPECT_NEAR(selection_probability(a, sol.dist), 0.5, 1e-12);
  }
}

TEST(EquilibriumUnrestricted, Shape) {
  const EquilibriumSolution sol = equilibrium_unrestricted();
  EXPECT_EQ(sol.dist.cdf(0.0), 0.0);
  EXPECT_EQ(sol.dist.cdf(1.0), 1.0);
  EXPECT_DOUBLE_EQ(sol.dist.cdf(0.5), 0.5);
  EXPECT_NEAR(*sol.dist.density(0.5), std::sqrt(2.0), 1e-14);
  EXPECT_TRUE(sol.dist.atoms().empty());
  for (double t = 0.0; t < 1.0; t += 0.01) {
    EXPECT_NEAR(*sol.dist.density(t), oracle::eq_unrestricted_pdf(t), 1e-12);
  }
}

TEST(EquilibriumInterval, StepRegime) {
  const EquilibriumSolution sol = equilibrium_interval(0.0, 0.4);
  EXPECT_EQ(sol.regime, Regime::step_at_b);
  EXPECT_EQ(sol.dist.atom_mass(0.4), 1.0);
  EXPECT_EQ(sol.failure_prob, 0.4);
  // Boundary (1-a)b = 1/2 is classified as a step.
  EXPECT_EQ(equilibrium_interval(0.0, 0.5).regime, Regime::step_at_b);
  EXPECT_EQ(equilibrium_interval(0.5, 1.0).regime, Regime::step_at_b);
  EXPECT_EQ(equilibrium_interval(0.0, std::nextafter(0.5, 1.0)).regime,
            Regime::interior);
}

TEST(EquilibriumInterval, FullRangeReducesToUnrestricted) {
  const EquilibriumSolution sol = equilibrium_interval(0.0, 1.0);
  EXPECT_EQ(sol.regime, Regime::interior);
  EXPECT_EQ(sol.atom_b, 0.0);
  EXPECT_EQ(sol.cut_point, 1.0);
  const MixedCdf eq = equilibrium_unrestricted().dist;
  for (int k = 0; k <= 1000; ++k) {
    EXPECT_NEAR(sol.dist.cdf(k / 1000.0), eq.cdf(k / 1000.0), 1e-12);
  }
}

TEST(EquilibriumInterval, RestrictedTopHasAtom) {
  const EquilibriumSolution sol = equilibrium_interval(0.0, 0.79);
  EXPECT_EQ(sol.regime, Regime::interior);
  EXPECT_GT(sol.atom_b, 0.0);
  EXPECT_NEAR(sol.cut_point, 0.6361044088615926, 1e-12);
  EXPECT_NEAR(sol.atom_b, 0.31427716252618965, 1e-12);
}

TEST(EquilibriumInterval, InteriorIdentities) {
  for (double a : {0.0, 0.05, 0.2, 0.35}) {
    for (double b : {0.8, 0.9, 0.97, 1.0}) {
      const EquilibriumSolution sol = equilibrium_interval(a, b);
      ASSERT_EQ(sol.regime, Regime::interior);
      const double phi = 1.0 / (2.0 * (1.0 - a));
      EXPECT_NEAR(sol.failure_prob, phi, 1e-15);
      EXPECT_NEAR(sol.dist.failure_probability(), phi, 1e-12);
      EXPECT_NEAR(sol.atom_b,
                  (1 - 2 * b + 2 * b * phi) / ((1 - b) * (1 - b) + b * b),
                  1e-12);
      EXPECT_NEAR(sol.atom_b, oracle::interval_delta(a, b), 1e-15);
      EXPECT_NEAR(sol.cut_point, oracle::interval_cut(a, b), 1e-15);
      EXPECT_NEAR(sol.dist.left_limit(b), 1.0 - sol.atom_b, 1e-9);
      EXPECT_EQ(sol.dist.cdf(a), 0.0);
      EXPECT_EQ(sol.dist.atom_mass(a), 0.0);
      const double mid = 0.5 * (sol.cut_point + b);
      if (sol.cut_point < b) {
        EXPECT_DOUBLE_EQ(sol.dist.cdf(mid), sol.dist.cdf(sol.cut_point));
      }
      for (int k = 0; k <= 200; ++k) {
        const double t = k / 200.0;
        EXPECT_NEAR(sol.dist.cdf(t), oracle::eq_interval_cdf(a, b, t), 1e-9);
      }
    }
  }
}

TEST(EquilibriumInterval, LimitContinuity) {
  const EquilibriumSolution near = equilibrium_interval(0.0, 1.0 - 1e-9);
  const MixedCdf eq = equilibrium_unrestricted().dist;
  for (int k = 0; k <= 1000; ++k) {
    const double t = k / 1000.0;
    EXPECT_NEAR(near.dist.cdf(t), eq.cdf(t), 1e-6);
  }
}

TEST(EquilibriumInterval, Errors) {
  EXPECT_THROW(equilibrium_interval(0.5, 0.5), std::invalid_argument);
  EXPECT_THROW(equilibrium_interval(0.6, 0.2), std::invalid_argument);
  EXPECT_THROW(equilibrium_interval(-0.1, 0.5), std::domain_error);
}

TEST(VerifyEquilibrium, ClosedFormsPass) {
  const VerificationReport u = verify_equilibrium(equilibrium_unrestricted());
  EXPECT_TRUE(u.pass);
  EXPECT_LE(u.max_support_deviation, 1e-8);
  const VerificationReport i = verify_equilibrium(equilibrium_interval(0.1, 0.9));
  EXPECT_TRUE(i.pass);
  ASSERT_TRUE(i.max_outside_gain.has_value());
  EXPECT_LT(*i.max_outside_gain, 0.0);
}

TEST(VerifyEquilibrium, OptimalIidIsNotAnEquilibrium) {
  EXPECT_FALSE(verify_candidate(optimal_iid(), 0.0, 1.0).pass);
}

TEST(VerifyEquilibrium, MonteCarloWinRatesAreHalf) {
  for (auto [a, b] : {std::pair{0.1, 0.9}, {0.0, 0.79}, {0.2, 0.5}}) {
    const SimulationSummary s =
        simulate(AssignmentRule::iid(equilibrium_interval(a, b).dist), 2,
                 {1'000'000, 8, 0});
    EXPECT_NEAR(s.first_rate[0], 0.5, 3.0 * s.first_rate_std_error[0]);
  }
}

TEST(BestResponse, UnrestrictedEquilibriumGivesHalf) {
  const BestResponse br = best_response_value(equilibrium_unrestricted().dist);
  EXPECT_NEAR(br.value, 0.5, 1e-8);
}

TEST(BestResponse, StepAtHalfIsBeaten) {
  const BestResponse br = best_response_value(MixedCdf::step(0.5));
  EXPECT_GT(br.value, 0.5);
  EXPECT_GT(br.theta, 0.5);
  EXPECT_GE(br.value, selection_probability(0.9, MixedCdf::step(0.5)));
  // Above 1/2 the payoff is 1 - theta/2, with supremum 3/4 as theta -> 1/2.
  EXPECT_NEAR(br.value, 0.75, 1e-6);
  EXPECT_LE(br.value, 0.75);
}

TEST(BestResponse, StepRegimeRestrictedToInterval) {
  const double a = 0.1;
  const double b = 0.5;
  ASSERT_LE((1 - a) * b, 0.5);
  const BestResponse br = best_response_value(MixedCdf::step(b), 10'000, a, b);
  EXPECT_NEAR(br.value, 0.5, 1e-12);
  EXPECT_EQ(br.theta, b);
}

TEST(BestResponse, StrategyStealing) {
  for (const MixedCdf& d : opponents()) {
    EXPECT_GE(best_response_value(d, 2000).value, 0.5 - 1e-9);
  }
}

TEST(TwoPoint, PayoffsAreHalf) {
  EXPECT_TRUE(two_point_payoff_check());
  EXPECT_NEAR(selection_probability(kTwoPointLow, MixedCdf::step(kTwoPointHigh)),
              0.5, 1e-12);
  EXPECT_NEAR(selection_probability(kTwoPointHigh, MixedCdf::step(kTwoPointHigh)),
              0.5, 1e-12);
  const std::vector<double> pair = {kTwoPointLow, kTwoPointHigh};
  EXPECT_NEAR(inversion_fixed<double>(pair), 3.0 - 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(two_point_payoff_check(0.3, 0.7));
}

TEST(VerifyResponse, AsymmetricTwoPointMixtures) {
  const MixedCdf x = MixedCdf::discrete({{kTwoPointLow, 0.3}, {kTwoPointHigh, 0.7}});
  const MixedCdf y = MixedCdf::discrete({{kTwoPointLow, 0.8}, {kTwoPointHigh, 0.2}});
  std::vector<double> support = {kTwoPointLow, kTwoPointHigh};
  for (double t : support) {
    EXPECT_NEAR(selection_probability(t, y), 0.5, 1e-12);
    EXPECT_NEAR(selection_probability(t, x), 0.5, 1e-12);
  }
}

}  // namespace
}  // namespace tsel
