#pragma once

// JSON forms of the library's result types.
//
// MixedCdf:
//   {"segments": [{"kind": K, "lo": l, "hi": h, ...params}],
//    "atoms": [[theta, mass], ...]}
// with K one of
//   "step"             flat piece, {"value": v}
//   "uniform"          linear piece, {"start": s, "end": e}
//   "poly"             {"coeffs": [c0, c1, ...]} in powers of (t - lo)
//   "eq_unrestricted"  no parameters
//   "eq_interval"      {"a": a}
// Doubles are written with round-trip precision, so parse(dump(d)) rebuilds
// the identical distribution.

#include <string>

#include <nlohmann/json.hpp>

#include "tsel/analysis.hpp"
#include "tsel/equilibrium.hpp"
#include "tsel/mixed_cdf.hpp"

namespace tsel {

// Throws std::invalid_argument for Custom pieces.
nlohmann::json to_json(const MixedCdf& dist);
// Throws std::invalid_argument on malformed input.
MixedCdf mixed_cdf_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EquilibriumSolution& sol);
nlohmann::json to_json(const IntervalPoint& point);
nlohmann::json to_json(const PoaReport& report);

// Aligned columns ordered along the number line, for humans.
std::string poa_text(const PoaReport& report);

}  // namespace tsel
