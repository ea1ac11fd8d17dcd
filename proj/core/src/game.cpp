#include "tsel/game.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tsel {

std::size_t select_two(QuantileThreshold theta_x, QuantileThreshold theta_y,
                       double x, double y, SplitMix64& coin) {
  const bool x_pass = x >= theta_x.value();
  const bool y_pass = y >= theta_y.value();
  if (x_pass != y_pass) return x_pass ? 0 : 1;
  if (theta_x != theta_y) return theta_x > theta_y ? 0 : 1;
  return coin.flip() ? 0 : 1;
}

std::size_t rank_into(std::span<const double> thresholds,
                      std::span<const double> qualities, SplitMix64& coin,
                      std::span<std::size_t> ranking) {
  const std::size_t n = thresholds.size();
  std::iota(ranking.begin(), ranking.end(), std::size_t{0});
  auto key_less = [&](std::size_t i, std::size_t j) {
    const bool pi = qualities[i] >= thresholds[i];
    const bool pj = qualities[j] >= thresholds[j];
    if (pi != pj) return pi;  // passers first
    return thresholds[i] > thresholds[j];
  };
  // Stable so that tied blocks start in index order before shuffling.
  std::stable_sort(ranking.begin(), ranking.end(), key_less);

  std::size_t draws = 0;
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && !key_less(ranking[begin], ranking[end]) &&
           !key_less(ranking[end], ranking[begin])) {
      ++end;
    }
    // Fisher-Yates over the tied block.
    for (std::size_t k = end - begin; k > 1; --k) {
      const std::size_t pick = coin.below(k);
      std::swap(ranking[begin + k - 1], ranking[begin + pick]);
      ++draws;
    }
    begin = end;
  }
  return draws;
}

std::vector<std::size_t> rank_n(std::span<const double> thresholds,
                                std::span<const double> qualities,
                                SplitMix64& coin, std::size_t* coin_flips) {
  if (thresholds.size() != qualities.size()) {
    throw std::invalid_argument("thresholds and qualities differ in length");
  }
  if (thresholds.size() < 2) {
    throw std::invalid_argument("ranking needs at least two firms");
  }
  std::vector<std::size_t> ranking(thresholds.size());
  const std::size_t draws = rank_into(thresholds, qualities, coin, ranking);
  if (coin_flips != nullptr) *coin_flips = draws;
  return ranking;
}

double kendall_tau_fraction(std::span<const std::size_t> ranking,
                            std::span<const double> qualities) {
  const std::size_t n = ranking.size();
  if (n < 2) return 0.0;
  std::size_t inverted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (qualities[ranking[i]] < qualities[ranking[j]]) ++inverted;
    }
  }
  return static_cast<double>(inverted) / static_cast<double>(n * (n - 1) / 2);
}

GameOutcome play(const AssignmentRule& rule, std::size_t n_firms,
                 SplitMix64& rng) {
  rule.check_firms(n_firms);
  std::vector<double> thresholds;
  rule.draw(n_firms, rng, thresholds);
  GameOutcome out;
  out.qualities.resize(n_firms);
  for (double& q : out.qualities) q = rng.uniform();
  out.ranking.resize(n_firms);
  out.coin_flips_used = rank_into(thresholds, out.qualities, rng, out.ranking);
  out.thresholds.reserve(n_firms);
  out.passed.reserve(n_firms);
  for (std::size_t i = 0; i < n_firms; ++i) {
    out.thresholds.emplace_back(thresholds[i]);
    out.passed.push_back(out.qualities[i] >= thresholds[i]);
  }
  return out;
}

}  // namespace tsel
