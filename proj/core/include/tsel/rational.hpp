#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace tsel {

// Exact rational arithmetic for the closed-form correlated optimum.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  std::string out = std::to_string(r.numerator());
  if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
  return out;
}

}  // namespace tsel
