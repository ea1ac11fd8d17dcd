#pragma once

// Principal-optimal test assignments.

#include <vector>

#include "tsel/mixed_cdf.hpp"
#include "tsel/rational.hpp"

namespace tsel {

struct SameTestOptimum {
  Rational threshold{1, 2};
  Rational value{1, 4};
};

// The median test, with inversion probability 1/4.
SameTestOptimum optimal_same_test();

struct CorrelatedOptimum {
  std::vector<Rational> thresholds;
  Rational value;

  std::vector<double> thresholds_as_double() const;
};

// theta_i = (n + 2(i - 1)) / (4n - 2) for i = 1..n, with value
// (5n - 4) / (12 (2n - 1)).  Throws std::invalid_argument for n < 2.
CorrelatedOptimum optimal_correlated(long n);

// Uniform[1/4, 3/4].
MixedCdf optimal_iid();

}  // namespace tsel
