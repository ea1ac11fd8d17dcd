#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsel/assignment_rule.hpp"
#include "tsel/mixed_cdf.hpp"
#include "tsel/random.hpp"

namespace tsel {

// One play of the selection game.
struct GameOutcome {
  std::vector<QuantileThreshold> thresholds;
  std::vector<double> qualities;
  std::vector<bool> passed;       // passed[i] <=> qualities[i] >= thresholds[i]
  std::vector<std::size_t> ranking;  // firm indices, best first
  std::size_t coin_flips_used = 0;
};

// Two-firm decision rule.  Returns 0 if X is selected, 1 if Y is.
//   exactly one passes            -> the passer
//   same outcome, distinct tests  -> the harder test
//   same outcome, same test       -> fair coin
std::size_t select_two(QuantileThreshold theta_x, QuantileThreshold theta_y,
                       double x, double y, SplitMix64& coin);

// n-firm ranking: passers ahead of failers, each group by descending
// threshold, tied blocks (same outcome and threshold) shuffled uniformly.
// Throws std::invalid_argument on length mismatch or n < 2.
std::vector<std::size_t> rank_n(std::span<const double> thresholds,
                                std::span<const double> qualities,
                                SplitMix64& coin,
                                std::size_t* coin_flips = nullptr);

// Allocation-free core of rank_n; `ranking` must have the right size.
// Returns the number of random draws spent on tie-breaking.
std::size_t rank_into(std::span<const double> thresholds,
                      std::span<const double> qualities, SplitMix64& coin,
                      std::span<std::size_t> ranking);

// Fraction of pairs ranked opposite to their true quality order.  Pairs with
// exactly equal quality never count.
double kendall_tau_fraction(std::span<const std::size_t> ranking,
                            std::span<const double> qualities);

// Draws thresholds and Uniform[0,1] qualities and ranks the firms.
GameOutcome play(const AssignmentRule& rule, std::size_t n_firms,
                 SplitMix64& rng);

}  // namespace tsel
