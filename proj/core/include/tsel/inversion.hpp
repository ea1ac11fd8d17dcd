#pragma once

// The principal's inversion probability I(.) evaluated deterministically.

#include <cstddef>
#include <span>
#include <stdexcept>

#include "tsel/assignment_rule.hpp"
#include "tsel/mixed_cdf.hpp"
#include "tsel/monte_carlo.hpp"
#include "tsel/rational.hpp"

namespace tsel {

inline constexpr double kOptimalIidValue = 5.0 / 24.0;

// I(G) = int_0^1 int_0^x (1 - G(x) + G(y))^2 dy dx, the probability that two
// firms with thresholds drawn i.i.d. from G are ranked in the wrong order.
// The triangle is split at every breakpoint of G in both coordinates.
InversionEstimate inversion_iid(const MixedCdf& dist, double abs_tol = 1e-10);

// Inversion probability when the two firms draw independently from
// different distributions:
//   E[X^2] + E[Y^2] - E[X] E[Y] - E[max(X, Y)] + 1/2.
double inversion_independent(const MixedCdf& first, const MixedCdf& second);

// Inversion probability of one pair with fixed thresholds lo <= hi:
//   1/2 (lo^2 + (hi - lo)^2 + (1 - hi)^2).
template <typename T>
T pair_inversion(const T& lo, const T& hi) {
  const T one(1);
  return (lo * lo + (hi - lo) * (hi - lo) + (one - hi) * (one - hi)) / T(2);
}

// Expected Kendall-tau fraction for fixed sorted thresholds.  Works for
// double and Rational.  Throws std::invalid_argument on n < 2 or unsorted
// input, std::domain_error on values outside [0,1].
template <typename T>
T inversion_fixed(std::span<const T> thresholds) {
  const std::size_t n = thresholds.size();
  if (n < 2) throw std::invalid_argument("need at least two thresholds");
  for (std::size_t i = 0; i < n; ++i) {
    if (thresholds[i] < T(0) || T(1) < thresholds[i]) {
      throw std::domain_error("threshold outside [0,1]");
    }
    if (i > 0 && thresholds[i] < thresholds[i - 1]) {
      throw std::invalid_argument("thresholds must be sorted ascending");
    }
  }
  T total(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      total += pair_inversion(thresholds[i], thresholds[j]);
    }
  }
  return total / T(static_cast<long>(n * (n - 1) / 2));
}

// (5n - 4) / (12 (2n - 1)).  Throws std::invalid_argument for n < 2.
Rational optimal_value_correlated(long n);

// Expansion of I around the i.i.d. optimum G0 = Uniform[1/4,3/4]:
// with D(x, y) = G0(x) - G(x) + G(y) - G0(y),
//   A = 2 int int (1 - G0(x) + G0(y)) D,   B = int int D^2,
// so that I(G) = I(G0) + A + B.
struct HybridCoefficients {
  double a_coeff = 0.0;
  double b_coeff = 0.0;
  double base_value = kOptimalIidValue;
};

HybridCoefficients hybrid_decompose(const MixedCdf& dist,
                                    double abs_tol = 1e-10);

// epsilon = sup_z |G(z) - G0(z)| and the floor 5/24 + epsilon^3 / 6.  The
// floor is not valid for every G: the quadratic hybrid coefficient equals the
// variance of G0 - G, which a distribution concentrated on a short interval
// keeps small (Uniform[0.6077, 0.7048] has I = 0.2598 < floor 0.2693).
struct SuboptimalityBound {
  double epsilon = 0.0;
  double lower_bound = kOptimalIidValue;
};

SuboptimalityBound suboptimality_bound(const MixedCdf& dist,
                                       std::size_t grid_size = 10'000);

// Deterministic expected Kendall-tau fraction for any assignment rule with
// n firms: closed form for same_test and fixed_list, quadrature otherwise.
InversionEstimate inversion_for_rule(const AssignmentRule& rule,
                                     std::size_t n_firms);

}  // namespace tsel
