#pragma once

#include <functional>

#include "tsel/mixed_cdf.hpp"

namespace tsel {

// A continuous quality prior, given by its inverse cdf on [0,1].  All game
// logic runs in quantile space; this only maps a quantile threshold back to
// a threshold on the quality scale.
class QualityPrior {
 public:
  // Rejects inverse cdfs that are not strictly increasing on (0,1), since a
  // prior with atoms has no well-defined quantile reduction.  Throws
  // std::invalid_argument.
  explicit QualityPrior(std::function<double(double)> inverse_cdf);

  static QualityPrior uniform();
  // F(x) = x^k on [0,1].
  static QualityPrior power(double k);
  static QualityPrior exponential(double rate);

  double inverse_cdf(double theta) const { return inverse_(theta); }

 private:
  std::function<double(double)> inverse_;
};

// sigma = F^{-1}(theta): a quality drawn from the prior fails the test
// sigma with probability theta.
double quantile_to_quality(QuantileThreshold theta, const QualityPrior& prior);

}  // namespace tsel
