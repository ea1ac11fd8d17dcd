#include "tsel/optimal.hpp"

#include <stdexcept>

#include "tsel/inversion.hpp"

namespace tsel {

SameTestOptimum optimal_same_test() { return {}; }

std::vector<double> CorrelatedOptimum::thresholds_as_double() const {
  std::vector<double> out;
  out.reserve(thresholds.size());
  for (const Rational& t : thresholds) out.push_back(to_double(t));
  return out;
}

CorrelatedOptimum optimal_correlated(long n) {
  if (n < 2) throw std::invalid_argument("need at least two firms");
  CorrelatedOptimum out;
  out.thresholds.reserve(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    out.thresholds.emplace_back(n + 2 * (i - 1), 4 * n - 2);
  }
  out.value = optimal_value_correlated(n);
  return out;
}

MixedCdf optimal_iid() { return MixedCdf::uniform(0.25, 0.75); }

}  // namespace tsel
