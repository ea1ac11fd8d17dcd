#include "tsel/quality_prior.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsel {

QualityPrior::QualityPrior(std::function<double(double)> inverse_cdf)
    : inverse_(std::move(inverse_cdf)) {
  if (!inverse_) throw std::invalid_argument("missing inverse cdf");
  constexpr int kProbes = 1024;
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < kProbes; ++i) {
    const double v = inverse_(static_cast<double>(i) / kProbes);
    if (std::isnan(v) || !(v > prev)) {
      throw std::invalid_argument(
          "inverse cdf must be strictly increasing on (0,1)");
    }
    prev = v;
  }
}

QualityPrior QualityPrior::uniform() {
  return QualityPrior([](double t) { return t; });
}

QualityPrior QualityPrior::power(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("power prior needs k > 0");
  return QualityPrior([k](double t) { return std::pow(t, 1.0 / k); });
}

QualityPrior QualityPrior::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential needs rate > 0");
  return QualityPrior([rate](double t) { return -std::log1p(-t) / rate; });
}

double quantile_to_quality(QuantileThreshold theta, const QualityPrior& prior) {
  return prior.inverse_cdf(theta.value());
}

}  // namespace tsel
