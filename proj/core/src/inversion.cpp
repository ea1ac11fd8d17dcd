#include "tsel/inversion.hpp"

#include <algorithm>
#include <cmath>

#include "tsel/quadrature.hpp"

namespace tsel {
namespace {

double optimal_cdf(double t) { return std::clamp(2.0 * t - 0.5, 0.0, 1.0); }

std::vector<double> cuts_for(const MixedCdf& dist,
                             std::initializer_list<double> extra = {}) {
  std::vector<double> points = dist.breakpoints();
  points.insert(points.end(), extra.begin(), extra.end());
  return quadrature::unit_cuts(points);
}

// E[theta^2] = 1 - 2 int_0^1 t G(t) dt.
double second_moment(const MixedCdf& dist, std::span<const double> cuts) {
  return 1.0 - 2.0 * quadrature::integrate_cells(
                         [&](double t) { return t * dist.cdf(t); }, cuts);
}

}  // namespace

InversionEstimate inversion_iid(const MixedCdf& dist, double abs_tol) {
  const std::vector<double> cuts = cuts_for(dist);
  const double value = quadrature::integrate_lower_triangle(
      [&](double x, double y) {
        const double d = 1.0 - dist.cdf(x) + dist.cdf(y);
        return d * d;
      },
      cuts, abs_tol);
  return {value, EstimateMethod::quadrature, 0.0, 0};
}

double inversion_independent(const MixedCdf& first, const MixedCdf& second) {
  std::vector<double> points = first.breakpoints();
  const std::vector<double> more = second.breakpoints();
  points.insert(points.end(), more.begin(), more.end());
  const std::vector<double> cuts = quadrature::unit_cuts(points);
  const double expected_max =
      1.0 - quadrature::integrate_cells(
                [&](double t) { return first.cdf(t) * second.cdf(t); }, cuts);
  return second_moment(first, cuts) + second_moment(second, cuts) -
         first.failure_probability() * second.failure_probability() -
         expected_max + 0.5;
}

Rational optimal_value_correlated(long n) {
  if (n < 2) throw std::invalid_argument("need at least two firms");
  return Rational(5 * n - 4, 12 * (2 * n - 1));
}

HybridCoefficients hybrid_decompose(const MixedCdf& dist, double abs_tol) {
  const std::vector<double> cuts = cuts_for(dist, {0.25, 0.75});
  HybridCoefficients out;
  out.a_coeff = 2.0 * quadrature::integrate_lower_triangle(
                          [&](double x, double y) {
                            const double g0x = optimal_cdf(x);
                            const double g0y = optimal_cdf(y);
                            return (1.0 - g0x + g0y) *
                                   (g0x - dist.cdf(x) + dist.cdf(y) - g0y);
                          },
                          cuts, abs_tol);
  out.b_coeff = quadrature::integrate_lower_triangle(
      [&](double x, double y) {
        const double d =
            optimal_cdf(x) - dist.cdf(x) + dist.cdf(y) - optimal_cdf(y);
        return d * d;
      },
      cuts, abs_tol);
  return out;
}

SuboptimalityBound suboptimality_bound(const MixedCdf& dist,
                                       std::size_t grid_size) {
  double eps = 0.0;
  auto probe = [&](double z) {
    eps = std::max(eps, std::abs(dist.cdf(z) - optimal_cdf(z)));
    if (z > 0.0) {
      eps = std::max(eps, std::abs(dist.left_limit(z) - optimal_cdf(z)));
    }
  };
  for (double z : dist.breakpoints()) probe(z);
  probe(0.0);
  probe(0.25);
  probe(0.75);
  probe(1.0);
  const std::size_t n = std::max<std::size_t>(grid_size, 1);
  for (std::size_t k = 0; k <= n; ++k) {
    probe(static_cast<double>(k) / static_cast<double>(n));
  }
  return {eps, kOptimalIidValue + eps * eps * eps / 6.0};
}

InversionEstimate inversion_for_rule(const AssignmentRule& rule,
                                     std::size_t n_firms) {
  rule.check_firms(n_firms);
  switch (rule.kind()) {
    case AssignmentRule::Kind::same_test: {
      const double t = std::get<AssignmentRule::SameTest>(rule.params()).theta;
      return {pair_inversion(t, t), EstimateMethod::closed_form, 0.0, 0};
    }
    case AssignmentRule::Kind::fixed_list: {
      const auto& t = std::get<AssignmentRule::FixedList>(rule.params());
      return {inversion_fixed<double>(t.thresholds),
              EstimateMethod::closed_form, 0.0, 0};
    }
    case AssignmentRule::Kind::iid:
      // Every pair is an i.i.d. pair, so the Kendall fraction has the same
      // expectation for any n.
      return inversion_iid(std::get<AssignmentRule::Iid>(rule.params()).dist);
    case AssignmentRule::Kind::independent: {
      const auto& ds = std::get<AssignmentRule::Independent>(rule.params()).dists;
      double total = 0.0;
      for (std::size_t i = 0; i < n_firms; ++i) {
        for (std::size_t j = i + 1; j < n_firms; ++j) {
          total += inversion_independent(ds[i], ds[j]);
        }
      }
      const double pairs = static_cast<double>(n_firms * (n_firms - 1) / 2);
      return {total / pairs, EstimateMethod::quadrature, 0.0, 0};
    }
  }
  throw std::logic_error("unknown rule kind");
}

}  // namespace tsel
