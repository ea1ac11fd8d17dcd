#pragma once

// Symmetric Bayes-Nash equilibria of the endogenous test-selection game and
// best-response payoff evaluation.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "tsel/mixed_cdf.hpp"

namespace tsel {

// Conditional win probabilities of a firm choosing threshold theta against
// an opponent drawing its threshold from a MixedCdf T with atom delta at
// theta, failure probability phi and Gamma = int_0^theta T:
//   win_pass  = phi + (1 - theta)(T(theta) - delta/2) + Gamma(theta)
//   win_fail  = theta (T(theta) - delta/2) - Gamma(theta)
//   win_total = (1 - theta) win_pass + theta win_fail
struct PayoffProfile {
  double theta = 0.0;
  double win_pass = 0.0;
  double win_fail = 0.0;
  double win_total = 0.0;
};

PayoffProfile win_probabilities(double theta, const MixedCdf& opponent);

// Probability of being selected when playing theta, from the expanded form
//   (1 - theta) phi + ((1 - theta)^2 + theta^2)(T - delta/2)
//     + (1 - 2 theta) Gamma.
double selection_probability(double theta, const MixedCdf& opponent);

enum class Regime { step_at_b, interior };

std::string to_string(Regime regime);

struct EquilibriumSolution {
  MixedCdf dist;
  double a = 0.0;
  double b = 1.0;
  Regime regime = Regime::interior;
  // Upper end of the continuous part; equals b in the step regime.
  double cut_point = 1.0;
  // Point mass at b.
  double atom_b = 0.0;
  double failure_prob = 0.5;
};

// cdf 1/2 (1 - (1 - 2t) / sqrt(t^2 + (1-t)^2)) on [0,1].
EquilibriumSolution equilibrium_unrestricted();

// Symmetric equilibrium when thresholds are restricted to [a, b].
//   (1 - a) b <= 1/2: both firms play b.
//   otherwise: continuous on [a, x*), flat on [x*, b), atom delta_b at b.
// Throws std::invalid_argument unless 0 <= a < b <= 1.
EquilibriumSolution equilibrium_interval(double a, double b);

// Closed forms used by equilibrium_interval, exposed for checking.
double interval_cut_point(double a, double b);
double interval_atom(double a, double b);

struct VerificationReport {
  // max |u(theta) - 1/2| over grid points in the support.
  double max_support_deviation = 0.0;
  // max u(theta) - 1/2 over grid points in [lo, hi] outside the support;
  // empty if every probe lies in the support.
  std::optional<double> max_outside_gain;
  std::size_t points_checked = 0;
  bool pass = false;
};

// Checks that `own` is a best response to `opponent` among thresholds in
// [lo, hi]: payoff exactly 1/2 on the support of `own` and at most 1/2
// elsewhere.  Probes a uniform grid plus every breakpoint and segment
// midpoint of both distributions.
VerificationReport verify_response(const MixedCdf& own,
                                   const MixedCdf& opponent, double lo,
                                   double hi, std::size_t grid_size = 10'000,
                                   double tol = 1e-8);

// Checks the equilibrium property of a symmetric candidate restricted to
// [lo, hi]: payoff exactly 1/2 on the support and at most 1/2 elsewhere.
// Probes a uniform grid plus every breakpoint and every segment midpoint.
VerificationReport verify_candidate(const MixedCdf& candidate, double lo,
                                    double hi, std::size_t grid_size = 10'000,
                                    double tol = 1e-8);

VerificationReport verify_equilibrium(const EquilibriumSolution& sol,
                                      std::size_t grid_size = 10'000,
                                      double tol = 1e-8);

struct BestResponse {
  double theta = 0.0;
  double value = 0.0;
};

// Maximizes selection_probability(., opponent) over [lo, hi]: grid scan,
// golden-section refinement on the best bracket, plus every opponent atom.
BestResponse best_response_value(const MixedCdf& opponent,
                                 std::size_t grid_size = 10'000,
                                 double lo = 0.0, double hi = 1.0);

// The two-point threshold set {1 - sqrt(2)/2, sqrt(2)/2}.
inline const double kTwoPointHigh = std::sqrt(0.5);
inline const double kTwoPointLow = 1.0 - kTwoPointHigh;

// True iff for every ordered pure pair from {low, high} each firm is
// selected with probability 1/2 within tol.
bool two_point_payoff_check(double low = kTwoPointLow,
                            double high = kTwoPointHigh, double tol = 1e-12);

}  // namespace tsel
