#include "tsel/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tsel {
namespace {

constexpr double kPlateauTolerance = 1e-9;

struct OpponentTerms {
  double phi;
  double t_minus_half_atom;  // T(theta) - delta_theta / 2
  double gamma;
};

OpponentTerms opponent_terms(double theta, const MixedCdf& opponent) {
  return {opponent.failure_probability(),
          opponent.cdf(theta) - 0.5 * opponent.atom_mass(theta),
          opponent.gamma(theta)};
}

}  // namespace

PayoffProfile win_probabilities(double theta, const MixedCdf& opponent) {
  require_unit_interval(theta, "threshold");
  const OpponentTerms o = opponent_terms(theta, opponent);
  PayoffProfile p;
  p.theta = theta;
  p.win_pass = o.phi + (1.0 - theta) * o.t_minus_half_atom + o.gamma;
  p.win_fail = theta * o.t_minus_half_atom - o.gamma;
  p.win_total = (1.0 - theta) * p.win_pass + theta * p.win_fail;
  return p;
}

double selection_probability(double theta, const MixedCdf& opponent) {
  require_unit_interval(theta, "threshold");
  const OpponentTerms o = opponent_terms(theta, opponent);
  const double q = 1.0 - theta;
  return q * o.phi + (q * q + theta * theta) * o.t_minus_half_atom +
         (1.0 - 2.0 * theta) * o.gamma;
}

std::string to_string(Regime regime) {
  return regime == Regime::step_at_b ? "step_at_b" : "interior";
}

EquilibriumSolution equilibrium_unrestricted() {
  MixedCdf dist = MixedCdfBuilder().shape_to(1.0, piece::EqUnrestricted{}).finish();
  return {std::move(dist), 0.0, 1.0, Regime::interior, 1.0, 0.0, 0.5};
}

double interval_cut_point(double a, double b) {
  return (1.0 - a - 2.0 * b + 4.0 * a * b - 2.0 * a * b * b) /
         (1.0 - 4.0 * (1.0 - a) * b + 2.0 * (1.0 - 2.0 * a) * b * b);
}

double interval_atom(double a, double b) {
  return (1.0 - a * (1.0 - b) - b * (1.0 - a)) /
         ((1.0 - a) * ((1.0 - b) * (1.0 - b) + b * b));
}

EquilibriumSolution equilibrium_interval(double a, double b) {
  require_unit_interval(a, "interval lower end");
  require_unit_interval(b, "interval upper end");
  if (!(a < b)) throw std::invalid_argument("interval needs a < b");

  if ((1.0 - a) * b <= 0.5) {
    return {MixedCdf::step(b), a, b, Regime::step_at_b, b, 1.0, b};
  }

  const double phi = 1.0 / (2.0 * (1.0 - a));
  const double delta = interval_atom(a, b);
  const double x_star = interval_cut_point(a, b);
  if (!(x_star >= a - kPlateauTolerance && x_star <= b + kPlateauTolerance)) {
    throw std::logic_error("cut point outside [a, b]");
  }
  const double cut = std::clamp(x_star, a, b);

  MixedCdfBuilder builder;
  builder.flat_to(a).shape_to(cut, piece::EqInterval{a});
  const double plateau = builder.level();
  if (std::abs(plateau - (1.0 - delta)) > kPlateauTolerance) {
    throw std::logic_error("plateau level disagrees with the atom at b");
  }
  builder.flat_to(b).atom(1.0 - plateau);
  return {builder.finish(), a, b, Regime::interior, cut, delta, phi};
}

VerificationReport verify_response(const MixedCdf& own,
                                   const MixedCdf& opponent, double lo,
                                   double hi, std::size_t grid_size,
                                   double tol) {
  require_unit_interval(lo, "verification lower end");
  require_unit_interval(hi, "verification upper end");
  if (hi < lo) throw std::invalid_argument("verification range is empty");

  std::vector<double> probes;
  const std::size_t n = std::max<std::size_t>(grid_size, 1);
  probes.reserve(n + 64);
  for (std::size_t k = 0; k <= n; ++k) {
    probes.push_back(lo + (hi - lo) * static_cast<double>(k) /
                              static_cast<double>(n));
  }
  for (const MixedCdf* d : {&own, &opponent}) {
    for (double p : d->breakpoints()) probes.push_back(p);
    for (const Segment& s : d->segments()) {
      probes.push_back(s.lo);
      probes.push_back(0.5 * (s.lo + s.hi));
    }
  }
  probes.push_back(hi);

  VerificationReport report;
  for (double theta : probes) {
    if (theta < lo || theta > hi) continue;
    const double gap = selection_probability(theta, opponent) - 0.5;
    if (own.in_support(theta)) {
      report.max_support_deviation =
          std::max(report.max_support_deviation, std::abs(gap));
    } else {
      report.max_outside_gain =
          std::max(report.max_outside_gain.value_or(gap), gap);
    }
    ++report.points_checked;
  }
  report.pass = report.max_support_deviation <= tol &&
                report.max_outside_gain.value_or(0.0) <= tol;
  return report;
}

VerificationReport verify_candidate(const MixedCdf& candidate, double lo,
                                    double hi, std::size_t grid_size,
                                    double tol) {
  return verify_response(candidate, candidate, lo, hi, grid_size, tol);
}

VerificationReport verify_equilibrium(const EquilibriumSolution& sol,
                                      std::size_t grid_size, double tol) {
  return verify_candidate(sol.dist, sol.a, sol.b, grid_size, tol);
}

BestResponse best_response_value(const MixedCdf& opponent,
                                 std::size_t grid_size, double lo, double hi) {
  require_unit_interval(lo, "search lower end");
  require_unit_interval(hi, "search upper end");
  if (hi < lo) throw std::invalid_argument("search range is empty");

  auto u = [&](double t) { return selection_probability(t, opponent); };
  const std::size_t n = std::max<std::size_t>(grid_size, 2);
  auto node = [&](std::size_t k) {
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n);
  };

  BestResponse best{lo, u(lo)};
  std::size_t best_k = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double v = u(node(k));
    if (v > best.value) {
      best = {node(k), v};
      best_k = k;
    }
  }

  // Golden-section on the bracket around the best node.
  double left = node(best_k == 0 ? 0 : best_k - 1);
  double right = node(std::min(best_k + 1, n));
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = right - ratio * (right - left);
  double d = left + ratio * (right - left);
  double uc = u(c);
  double ud = u(d);
  for (int iter = 0; iter < 60; ++iter) {
    if (uc >= ud) {
      right = d;
      d = c;
      ud = uc;
      c = right - ratio * (right - left);
      uc = u(c);
    } else {
      left = c;
      c = d;
      uc = ud;
      d = left + ratio * (right - left);
      ud = u(d);
    }
  }
  if (uc > best.value) best = {c, uc};
  if (ud > best.value) best = {d, ud};

  for (const Atom& atom : opponent.atoms()) {
    if (atom.location < lo || atom.location > hi) continue;
    const double v = u(atom.location);
    if (v > best.value) best = {atom.location, v};
  }
  return best;
}

bool two_point_payoff_check(double low, double high, double tol) {
  const double points[] = {low, high};
  for (double x : points) {
    for (double y : points) {
      const double ux = selection_probability(x, MixedCdf::step(y));
      const double uy = selection_probability(y, MixedCdf::step(x));
      if (std::abs(ux - 0.5) > tol || std::abs(uy - 0.5) > tol) return false;
    }
  }
  return true;
}

}  // namespace tsel
