#pragma once

// Text specifications of distributions and assignment rules.
//
//   distribution := "uniform:" lo "," hi | "step:" t | "eq" | "eq:" a "," b
//   rule         := "same:" t
//                 | "fixed:" t1 "," t2 ["," ...]
//                 | "iid:" distribution
//                 | "indep:" distribution ";" distribution [";" ...]
//
// Numbers are decimals or exact fractions "p/q".

#include <string_view>

#include "tsel/assignment_rule.hpp"
#include "tsel/mixed_cdf.hpp"

namespace tsel {

// Throws std::invalid_argument on malformed input.
double parse_number(std::string_view text);
MixedCdf parse_distribution(std::string_view spec);
AssignmentRule parse_rule(std::string_view spec);

}  // namespace tsel
