#pragma once

// Distributions over quantile thresholds in [0,1].
//
// A MixedCdf is a right-continuous cdf built from closed-form pieces that
// tile [0,1) and a list of atoms.  Each piece returns the *full* cumulative
// probability on its half-open interval, so the jump between consecutive
// pieces is exactly the atom mass registered at the shared endpoint.  The
// point 1 is special: cdf(1) is always 1 and any mass missing from the last
// piece's left limit is an atom at 1.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tsel/random.hpp"

namespace tsel {

// A test difficulty expressed as the probability that a Uniform[0,1] quality
// fails it.  Pass probability is 1 - value().
class QuantileThreshold {
 public:
  constexpr QuantileThreshold() = default;
  // Throws std::domain_error outside [0,1].
  explicit QuantileThreshold(double value);

  constexpr double value() const { return value_; }
  constexpr double pass_probability() const { return 1.0 - value_; }

  friend constexpr auto operator<=>(const QuantileThreshold&,
                                    const QuantileThreshold&) = default;

 private:
  double value_ = 0.0;
};

// Throws std::domain_error unless 0 <= theta <= 1.
void require_unit_interval(double theta, std::string_view what);

namespace piece {

// Constant cumulative probability; a flat stretch of the cdf.
struct Flat {
  double value = 0.0;
};

// Linear interpolation from `start` at lo to `end` at hi (uniform density).
struct Linear {
  double start = 0.0;
  double end = 1.0;
};

// sum_k coeffs[k] * (t - lo)^k.
struct Polynomial {
  std::vector<double> coeffs;
};

// 1/2 * (1 - (1 - 2t) / sqrt(t^2 + (1-t)^2)), the full-range equilibrium.
struct EqUnrestricted {};

// phi * ((1 - 2a) + sqrt(a^2 + (1-a)^2) * (2t - 1) / sqrt(t^2 + (1-t)^2)),
// phi = 1 / (2(1-a)); the continuous part of the [a,b] equilibrium.
struct EqInterval {
  double a = 0.0;
};

// Arbitrary monotone evaluator.  Integrated and inverted numerically; not
// serializable.
struct Custom {
  std::function<double(double)> cdf;
};

}  // namespace piece

using PieceShape = std::variant<piece::Flat, piece::Linear, piece::Polynomial,
                                piece::EqUnrestricted, piece::EqInterval,
                                piece::Custom>;

struct Segment {
  double lo = 0.0;
  double hi = 1.0;
  PieceShape shape;

  double value(double t) const;
  // Derivative of value(); exact for closed forms, central difference for
  // Custom.
  double density(double t) const;
  // Closed-form integral of value() over [lo, t] (adaptive quadrature for
  // Custom).
  double integral_to(double t) const;
  // Smallest t in [lo, hi) with value(t) >= u, assuming
  // value(lo) <= u < value(hi).
  double inverse(double u) const;
  bool is_flat() const;
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

class MixedCdf {
 public:
  // Builds and validates.  Segments must tile [0,1) contiguously, be
  // individually nondecreasing, and jump at each shared endpoint by the atom
  // registered there (tolerance 1e-12).  Throws std::invalid_argument.
  MixedCdf(std::vector<Segment> segments, std::vector<Atom> atoms);

  static MixedCdf uniform(double lo, double hi);
  static MixedCdf step(double location);
  // Point masses only.  Masses must sum to 1.
  static MixedCdf discrete(std::vector<Atom> atoms);

  // Right-continuous cdf.  Throws std::domain_error outside [0,1].
  double cdf(double theta) const;
  double cdf(QuantileThreshold theta) const { return cdf(theta.value()); }
  // lim_{t -> theta-} cdf(t); 0 at theta = 0.
  double left_limit(double theta) const;
  // Mass of the atom at theta (0 if none).
  double atom_mass(double theta) const;
  // Density of the continuous part; nullopt at atoms.  At theta = 1 the
  // left derivative is reported.
  std::optional<double> density(double theta) const;
  // Gamma(theta) = integral of cdf over [0, theta].
  double gamma(double theta) const;
  // Mean threshold, 1 - Gamma(1).
  double failure_probability() const;
  // True if theta is an atom or lies in the closure of a strictly
  // increasing piece.
  bool in_support(double theta) const;

  QuantileThreshold sample(SplitMix64& rng) const;
  double sample_value(SplitMix64& rng) const;

  // Sorted interior segment endpoints and atom locations.
  std::vector<double> breakpoints() const;
  std::span<const Segment> segments() const { return segments_; }
  std::span<const Atom> atoms() const { return atoms_; }

 private:
  std::size_t segment_index(double theta) const;

  std::vector<Segment> segments_;
  std::vector<Atom> atoms_;
  std::vector<double> prefix_integral_;  // integral of cdf over [0, lo_i]
  std::vector<double> start_value_;      // value at lo_i
  std::vector<double> end_value_;        // left limit at hi_i
};

// Incremental construction left to right.  Each call extends the cdf from
// the current position; `finish` closes the tiling at 1.
class MixedCdfBuilder {
 public:
  MixedCdfBuilder& flat_to(double hi);
  MixedCdfBuilder& linear_to(double hi, double added_mass);
  MixedCdfBuilder& shape_to(double hi, PieceShape shape);
  MixedCdfBuilder& atom(double mass);
  // Any missing mass becomes an atom at 1.
  MixedCdf finish();

  double position() const { return position_; }
  double level() const { return level_; }

 private:
  std::vector<Segment> segments_;
  std::vector<Atom> atoms_;
  double position_ = 0.0;
  double level_ = 0.0;
};

}  // namespace tsel
