#pragma once

// Test-side reference computations written independently of the library's
// evaluators: closed-form cdfs transcribed directly from their formulas and
// composite Simpson quadrature of the one-dimensional form of I(G):
//   I(G) = int_0^1 [x (1-G)^2 + 2 (1-G) Gamma + (1-x) G^2] dx.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace tsel::oracle {

inline double spread(double t) {
  return std::sqrt(t * t + (1.0 - t) * (1.0 - t));
}

inline double eq_unrestricted_cdf(double t) {
  return 0.5 * (1.0 - (1.0 - 2.0 * t) / spread(t));
}

inline double eq_unrestricted_pdf(double t) {
  const double s = spread(t);
  return 0.5 / (s * s * s);
}

// Atom at b of the interval equilibrium, interior regime.
inline double interval_delta(double a, double b) {
  return (1.0 - a * (1.0 - b) - b * (1.0 - a)) /
         ((1.0 - a) * ((1.0 - b) * (1.0 - b) + b * b));
}

inline double interval_cut(double a, double b) {
  return (1.0 - a - 2.0 * b + 4.0 * a * b - 2.0 * a * b * b) /
         (1.0 - 4.0 * (1.0 - a) * b + 2.0 * (1.0 - 2.0 * a) * b * b);
}

// Full interval equilibrium cdf, both regimes.
inline double eq_interval_cdf(double a, double b, double t) {
  if (t >= b) return 1.0;
  if ((1.0 - a) * b <= 0.5 || t < a) return 0.0;
  const double phi = 1.0 / (2.0 * (1.0 - a));
  const double x = std::min(t, interval_cut(a, b));
  return phi * ((1.0 - 2.0 * a) + spread(a) * (2.0 * x - 1.0) / spread(x));
}

// Composite Simpson on each cell [cuts[i], cuts[i+1]], evaluating the
// integrand strictly inside the cell at its ends so one-sided limits are
// used at jumps.
inline double simpson_cells(const std::function<double(double)>& f,
                            const std::vector<double>& cuts,
                            int panels = 2000) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (hi <= lo) continue;
    const double h = (hi - lo) / panels;
    auto g = [&](double x) {
      return f(std::clamp(x, std::nextafter(lo, hi), std::nextafter(hi, lo)));
    };
    double acc = g(lo) + g(hi);
    for (int k = 1; k < panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * g(lo + k * h);
    total += acc * h / 3.0;
  }
  return total;
}

// I(G) from the 1D reduction.  Gamma is accumulated on the same grid with a
// running Simpson rule at half steps.
inline double inversion_1d(const std::function<double(double)>& cdf,
                           std::vector<double> cuts, int panels = 4000) {
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  double gamma_lo = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const double h = (hi - lo) / panels;
    auto G = [&](double x) {
      return cdf(std::clamp(x, std::nextafter(lo, hi), std::nextafter(hi, lo)));
    };
    // Gamma at the grid nodes and at the midpoints of each panel.
    std::vector<double> node_gamma(panels + 1);
    std::vector<double> mid_gamma(panels);
    node_gamma[0] = gamma_lo;
    for (int k = 0; k < panels; ++k) {
      const double x0 = lo + k * h;
      const double xm = x0 + 0.5 * h;
      const double q = 0.25 * h;
      mid_gamma[k] = node_gamma[k] + (0.5 * h / 6.0) *
                                         (G(x0) + 4.0 * G(x0 + q) + G(xm));
      node_gamma[k + 1] = mid_gamma[k] + (0.5 * h / 6.0) *
                                             (G(xm) + 4.0 * G(xm + q) + G(x0 + h));
    }
    auto f = [&](double x, double gamma) {
      const double g = G(x);
      return x * (1.0 - g) * (1.0 - g) + 2.0 * (1.0 - g) * gamma +
             (1.0 - x) * g * g;
    };
    for (int k = 0; k < panels; ++k) {
      const double x0 = lo + k * h;
      total += (h / 6.0) * (f(x0, node_gamma[k]) +
                            4.0 * f(x0 + 0.5 * h, mid_gamma[k]) +
                            f(x0 + h, node_gamma[k + 1]));
    }
    gamma_lo = node_gamma[panels];
  }
  return total;
}

// Selection probability of theta against an opponent whose threshold has
// density `pdf` on its continuous part plus point masses, by direct case
// analysis over the opponent's threshold s:
//   s < theta: opponent wins only if it passes and we fail -> 1 - theta(1-s)
//   s > theta: we win only if we pass and it fails         -> (1-theta) s
//   s = theta: passer wins, coin on equal outcomes         -> 1/2
inline double win_given(double theta, double s) {
  if (s < theta) return 1.0 - theta * (1.0 - s);
  if (s > theta) return (1.0 - theta) * s;
  return 0.5;
}

inline double selection_probability_direct(
    double theta, const std::function<double(double)>& pdf,
    const std::vector<std::pair<double, double>>& atoms,
    std::vector<double> cuts) {
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  cuts.push_back(theta);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (const auto& [s, m] : atoms) total += m * win_given(theta, s);
  return total + simpson_cells(
                     [&](double s) { return pdf(s) * win_given(theta, s); },
                     cuts, 2000);
}

}  // namespace tsel::oracle
