#include "tsel/mixed_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tsel/quadrature.hpp"

namespace tsel {
namespace {

constexpr double kJumpTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// sqrt(t^2 + (1-t)^2)
double spread(double t) { return std::sqrt(t * t + (1.0 - t) * (1.0 - t)); }

double interval_phi(double a) { return 1.0 / (2.0 * (1.0 - a)); }
double interval_c(double a) { return spread(a); }

// Solves (2t - 1) / spread(t) = w for t; |w| < sqrt(2).
double invert_spread_ratio(double w) {
  w = std::clamp(w, -1.0, 1.0);
  const double z = w / std::sqrt(2.0 - w * w);
  return 0.5 * (z + 1.0);
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double u) {
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

QuantileThreshold::QuantileThreshold(double value) : value_(value) {
  require_unit_interval(value, "quantile threshold");
}

void require_unit_interval(double theta, std::string_view what) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0,1], got " +
                            std::to_string(theta));
  }
}

double Segment::value(double t) const {
  return std::visit(
      Overloaded{
          [](const piece::Flat& p) { return p.value; },
          [&](const piece::Linear& p) {
            return p.start + (p.end - p.start) * (t - lo) / (hi - lo);
          },
          [&](const piece::Polynomial& p) {
            const double x = t - lo;
            double acc = 0.0;
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
              acc = acc * x + *it;
            }
            return acc;
          },
          [&](const piece::EqUnrestricted&) {
            return 0.5 * (1.0 - (1.0 - 2.0 * t) / spread(t));
          },
          [&](const piece::EqInterval& p) {
            return interval_phi(p.a) * ((1.0 - 2.0 * p.a) +
                                        interval_c(p.a) * (2.0 * t - 1.0) /
                                            spread(t));
          },
          [&](const piece::Custom& p) { return p.cdf(t); },
      },
      shape);
}

double Segment::density(double t) const {
  return std::visit(
      Overloaded{
          [](const piece::Flat&) { return 0.0; },
          [&](const piece::Linear& p) { return (p.end - p.start) / (hi - lo); },
          [&](const piece::Polynomial& p) {
            const double x = t - lo;
            double acc = 0.0;
            for (std::size_t k = p.coeffs.size(); k-- > 1;) {
              acc = acc * x + static_cast<double>(k) * p.coeffs[k];
            }
            return acc;
          },
          [&](const piece::EqUnrestricted&) {
            const double s = spread(t);
            return 0.5 / (s * s * s);
          },
          [&](const piece::EqInterval& p) {
            const double s = spread(t);
            return interval_phi(p.a) * interval_c(p.a) / (s * s * s);
          },
          [&](const piece::Custom& p) {
            const double h = 1e-6;
            const double left = std::max(lo, t - h);
            const double right = std::min(hi, t + h);
            // hi is excluded from the piece; stay just inside it.
            const double r = right >= hi ? hi - 1e-12 : right;
            return (p.cdf(r) - p.cdf(left)) / (r - left);
          },
      },
      shape);
}

double Segment::integral_to(double t) const {
  const double x = t - lo;
  if (x <= 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [&](const piece::Flat& p) { return p.value * x; },
          [&](const piece::Linear& p) {
            const double slope = (p.end - p.start) / (hi - lo);
            return p.start * x + 0.5 * slope * x * x;
          },
          [&](const piece::Polynomial& p) {
            double acc = 0.0;
            for (std::size_t k = p.coeffs.size(); k-- > 0;) {
              acc = acc * x + p.coeffs[k] / static_cast<double>(k + 1);
            }
            return acc * x;
          },
          [&](const piece::EqUnrestricted&) {
            auto anti = [](double u) { return 0.5 * u + 0.5 * spread(u); };
            return anti(t) - anti(lo);
          },
          [&](const piece::EqInterval& p) {
            const double c = interval_c(p.a);
            auto anti = [&](double u) {
              return (1.0 - 2.0 * p.a) * u + c * spread(u);
            };
            return interval_phi(p.a) * (anti(t) - anti(lo));
          },
          [&](const piece::Custom& p) {
            return quadrature::integrate(p.cdf, lo, t, 1e-13);
          },
      },
      shape);
}

double Segment::inverse(double u) const {
  const double t = std::visit(
      Overloaded{
          [&](const piece::Flat&) { return lo; },
          [&](const piece::Linear& p) {
            return lo + (u - p.start) / (p.end - p.start) * (hi - lo);
          },
          [&](const piece::EqUnrestricted&) {
            return invert_spread_ratio(2.0 * u - 1.0);
          },
          [&](const piece::EqInterval& p) {
            const double w = (u / interval_phi(p.a) - (1.0 - 2.0 * p.a)) /
                             interval_c(p.a);
            return invert_spread_ratio(w);
          },
          [&](const auto&) {
            return bisect([this](double s) { return value(s); }, lo, hi, u);
          },
      },
      shape);
  return std::clamp(t, lo, std::nextafter(hi, lo));
}

bool Segment::is_flat() const {
  return std::visit(
      Overloaded{
          [](const piece::Flat&) { return true; },
          [](const piece::Linear& p) { return p.start == p.end; },
          [](const piece::Polynomial& p) {
            return std::all_of(p.coeffs.begin() + std::min<std::size_t>(
                                                      1, p.coeffs.size()),
                               p.coeffs.end(),
                               [](double c) { return c == 0.0; });
          },
          [](const auto&) { return false; },
      },
      shape);
}

MixedCdf::MixedCdf(std::vector<Segment> segments, std::vector<Atom> atoms)
    : segments_(std::move(segments)), atoms_(std::move(atoms)) {
  if (segments_.empty()) {
    throw std::invalid_argument("MixedCdf needs at least one segment");
  }
  if (segments_.front().lo != 0.0 || segments_.back().hi != 1.0) {
    throw std::invalid_argument("segments must tile [0,1)");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (!(s.lo < s.hi)) {
      throw std::invalid_argument("segment with empty interval");
    }
    if (i > 0 && segments_[i - 1].hi != s.lo) {
      throw std::invalid_argument("segments must be contiguous");
    }
    if (const auto* c = std::get_if<piece::Custom>(&s.shape); c && !c->cdf) {
      throw std::invalid_argument("custom segment without evaluator");
    }
  }

  std::erase_if(atoms_, [](const Atom& a) { return a.mass == 0.0; });
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  double atom_total = 0.0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const Atom& a = atoms_[k];
    require_unit_interval(a.location, "atom location");
    if (a.mass < 0.0) throw std::invalid_argument("negative atom mass");
    if (k > 0 && atoms_[k - 1].location == a.location) {
      throw std::invalid_argument("duplicate atom location");
    }
    const bool on_boundary =
        a.location == 0.0 || a.location == 1.0 ||
        std::any_of(segments_.begin(), segments_.end(),
                    [&](const Segment& s) { return s.lo == a.location; });
    if (!on_boundary) {
      throw std::invalid_argument("atom must sit on a segment endpoint");
    }
    atom_total += a.mass;
  }
  if (atom_total > 1.0 + kJumpTolerance) {
    throw std::invalid_argument("atom masses exceed 1");
  }

  const std::size_t n = segments_.size();
  start_value_.resize(n);
  end_value_.resize(n);
  prefix_integral_.resize(n + 1);
  prefix_integral_[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& s = segments_[i];
    start_value_[i] = s.value(s.lo);
    end_value_[i] = s.value(s.hi);
    prefix_integral_[i + 1] = prefix_integral_[i] + s.integral_to(s.hi);

    // Nondecreasing inside the piece, checked on a small grid.
    double prev = start_value_[i];
    for (int k = 1; k <= 8; ++k) {
      const double v = s.value(s.lo + (s.hi - s.lo) * k / 8.0);
      if (v < prev - kJumpTolerance) {
        throw std::invalid_argument("segment is not nondecreasing");
      }
      prev = v;
    }
    if (start_value_[i] < -kJumpTolerance) {
      throw std::invalid_argument("negative cumulative probability");
    }

    const double before = i == 0 ? 0.0 : end_value_[i - 1];
    const double jump = start_value_[i] - before;
    if (std::abs(jump - atom_mass(s.lo)) > kJumpTolerance) {
      throw std::invalid_argument("jump at " + std::to_string(s.lo) +
                                  " does not match its atom mass");
    }
  }
  if (std::abs((1.0 - end_value_.back()) - atom_mass(1.0)) > kJumpTolerance) {
    throw std::invalid_argument("cdf does not reach 1 at the upper end");
  }
}

MixedCdf MixedCdf::uniform(double lo, double hi) {
  require_unit_interval(lo, "uniform lower end");
  require_unit_interval(hi, "uniform upper end");
  if (hi < lo) throw std::invalid_argument("uniform needs lo <= hi");
  if (hi == lo) return step(lo);
  return MixedCdfBuilder().flat_to(lo).linear_to(hi, 1.0).finish();
}

MixedCdf MixedCdf::step(double location) {
  require_unit_interval(location, "step location");
  return MixedCdfBuilder().flat_to(location).atom(1.0).finish();
}

MixedCdf MixedCdf::discrete(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
  double total = 0.0;
  MixedCdfBuilder builder;
  for (const Atom& a : atoms) {
    require_unit_interval(a.location, "atom location");
    builder.flat_to(a.location).atom(a.mass);
    total += a.mass;
  }
  if (std::abs(total - 1.0) > kJumpTolerance) {
    throw std::invalid_argument("discrete masses must sum to 1");
  }
  return builder.finish();
}

std::size_t MixedCdf::segment_index(double theta) const {
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), theta,
      [](double t, const Segment& s) { return t < s.lo; });
  return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

double MixedCdf::cdf(double theta) const {
  require_unit_interval(theta, "threshold");
  if (theta >= 1.0) return 1.0;
  return segments_[segment_index(theta)].value(theta);
}

double MixedCdf::left_limit(double theta) const {
  require_unit_interval(theta, "threshold");
  if (theta == 0.0) return 0.0;
  if (theta >= 1.0) return end_value_.back();
  const std::size_t i = segment_index(theta);
  if (theta == segments_[i].lo) return end_value_[i - 1];
  return segments_[i].value(theta);
}

double MixedCdf::atom_mass(double theta) const {
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), theta,
      [](const Atom& a, double t) { return a.location < t; });
  return (it != atoms_.end() && it->location == theta) ? it->mass : 0.0;
}

std::optional<double> MixedCdf::density(double theta) const {
  require_unit_interval(theta, "threshold");
  if (atom_mass(theta) > 0.0) return std::nullopt;
  if (theta >= 1.0) return segments_.back().density(1.0);
  return segments_[segment_index(theta)].density(theta);
}

double MixedCdf::gamma(double theta) const {
  require_unit_interval(theta, "threshold");
  if (theta >= 1.0) return prefix_integral_.back();
  const std::size_t i = segment_index(theta);
  return prefix_integral_[i] + segments_[i].integral_to(theta);
}

double MixedCdf::failure_probability() const {
  return 1.0 - prefix_integral_.back();
}

bool MixedCdf::in_support(double theta) const {
  require_unit_interval(theta, "threshold");
  if (atom_mass(theta) > 0.0) return true;
  if (theta >= 1.0) return !segments_.back().is_flat();
  const std::size_t i = segment_index(theta);
  if (!segments_[i].is_flat()) return true;
  return theta == segments_[i].lo && i > 0 && !segments_[i - 1].is_flat();
}

double MixedCdf::sample_value(SplitMix64& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(end_value_.begin(), end_value_.end(), u);
  if (it == end_value_.end()) return 1.0;
  const auto i = static_cast<std::size_t>(std::distance(end_value_.begin(), it));
  if (u < start_value_[i]) return segments_[i].lo;
  return segments_[i].inverse(u);
}

QuantileThreshold MixedCdf::sample(SplitMix64& rng) const {
  return QuantileThreshold(sample_value(rng));
}

std::vector<double> MixedCdf::breakpoints() const {
  std::vector<double> points;
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    points.push_back(segments_[i].lo);
  }
  for (const Atom& a : atoms_) points.push_back(a.location);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

MixedCdfBuilder& MixedCdfBuilder::flat_to(double hi) {
  return shape_to(hi, piece::Flat{level_});
}

MixedCdfBuilder& MixedCdfBuilder::linear_to(double hi, double added_mass) {
  return shape_to(hi, piece::Linear{level_, level_ + added_mass});
}

MixedCdfBuilder& MixedCdfBuilder::shape_to(double hi, PieceShape shape) {
  require_unit_interval(hi, "segment end");
  if (hi < position_) {
    throw std::invalid_argument("builder segments must move left to right");
  }
  if (hi == position_) return *this;
  Segment s{position_, hi, std::move(shape)};
  level_ = s.value(hi);
  segments_.push_back(std::move(s));
  position_ = hi;
  return *this;
}

MixedCdfBuilder& MixedCdfBuilder::atom(double mass) {
  if (mass < 0.0) throw std::invalid_argument("negative atom mass");
  if (mass == 0.0) return *this;
  if (!atoms_.empty() && atoms_.back().location == position_) {
    atoms_.back().mass += mass;
  } else {
    atoms_.push_back({position_, mass});
  }
  level_ += mass;
  return *this;
}

MixedCdf MixedCdfBuilder::finish() {
  if (position_ < 1.0) flat_to(1.0);
  const double missing = 1.0 - level_;
  if (missing < -kJumpTolerance) {
    throw std::invalid_argument("builder mass exceeds 1");
  }
  if (missing > kJumpTolerance) {
    if (!atoms_.empty() && atoms_.back().location == 1.0) {
      atoms_.back().mass += missing;
    } else {
      atoms_.push_back({1.0, missing});
    }
  }
  return MixedCdf(std::move(segments_), std::move(atoms_));
}

}  // namespace tsel
