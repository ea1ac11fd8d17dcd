#include "tsel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace tsel::quadrature {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;

constexpr int kMaxDepth = 40;

double adaptive(const std::function<double(double)>& f, double lo, double hi,
                double abs_tol, int depth) {
  double error = 0.0;
  const double estimate = Rule::integrate(f, lo, hi, 0, 0.0, &error);
  if (error <= abs_tol || depth >= kMaxDepth || hi - lo < 1e-15) {
    return estimate;
  }
  const double mid = 0.5 * (lo + hi);
  return adaptive(f, lo, mid, 0.5 * abs_tol, depth + 1) +
         adaptive(f, mid, hi, 0.5 * abs_tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol) {
  if (!(hi > lo)) return 0.0;
  return adaptive(f, lo, hi, abs_tol, 0);
}

double integrate_cells(const std::function<double(double)>& f,
                       std::span<const double> cuts, double abs_tol) {
  if (cuts.size() < 2) return 0.0;
  const double cell_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(f, cuts[i], cuts[i + 1], cell_tol);
  }
  return total;
}

std::vector<double> unit_cuts(std::span<const double> points) {
  std::vector<double> cuts{0.0, 1.0};
  for (double p : points) {
    if (p > 0.0 && p < 1.0) cuts.push_back(p);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

double integrate_lower_triangle(const std::function<double(double, double)>& f,
                                std::span<const double> cuts, double abs_tol) {
  if (cuts.size() < 2 || cuts.front() != 0.0 || cuts.back() != 1.0 ||
      !std::is_sorted(cuts.begin(), cuts.end())) {
    throw std::invalid_argument("triangle cuts must be sorted and span [0,1]");
  }
  const std::size_t cells = cuts.size() - 1;
  // Each (outer, inner) cell pair gets an equal share of the budget.
  const double pair_tol =
      abs_tol / static_cast<double>(cells * (cells + 1) / 2);
  double total = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double x_lo = cuts[i];
    const double x_hi = cuts[i + 1];
    const double width = x_hi - x_lo;
    if (width <= 0.0) continue;
    for (std::size_t j = 0; j <= i; ++j) {
      const double y_lo = cuts[j];
      const double y_hi = cuts[j + 1];
      auto inner = [&](double x) {
        const double top = (j == i) ? x : y_hi;
        return integrate([&](double y) { return f(x, y); }, y_lo, top,
                         0.1 * pair_tol / width);
      };
      total += integrate(inner, x_lo, x_hi, 0.5 * pair_tol);
    }
  }
  return total;
}

}  // namespace tsel::quadrature
