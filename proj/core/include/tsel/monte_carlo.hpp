#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tsel/assignment_rule.hpp"

namespace tsel {

enum class EstimateMethod { closed_form, quadrature, monte_carlo };

std::string to_string(EstimateMethod method);

// A value of the principal's inversion probability I and how it was
// obtained.  Deterministic methods carry std_error = 0 and trials = 0.
struct InversionEstimate {
  double value = 0.0;
  EstimateMethod method = EstimateMethod::closed_form;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

inline constexpr std::uint64_t kDefaultTrials = 10'000'000;

struct SimulationOptions {
  std::uint64_t trials = kDefaultTrials;
  std::uint64_t seed = 0;
  // 0 means: TSEL_THREADS from the environment, else hardware concurrency.
  unsigned threads = 0;
};

struct SimulationSummary {
  InversionEstimate inversion;
  // Per firm: fraction of trials ranked first, and its standard error.
  std::vector<double> first_rate;
  std::vector<double> first_rate_std_error;
  double mean_coin_flips = 0.0;
};

// Threads used when `requested` is 0.
unsigned default_thread_count();

// Runs `trials` independent games.  Trial t uses the stream
// trial_stream(seed, t); trials are reduced in fixed-size blocks with
// pairwise summation, so the result is bit-identical for any thread count.
// Throws std::invalid_argument for trials == 0 or a rule/firm mismatch.
SimulationSummary simulate(const AssignmentRule& rule, std::size_t n_firms,
                           const SimulationOptions& options);

// Mean Kendall-tau fraction with std_error = sqrt(s^2 / trials).
InversionEstimate mc_inversion(const AssignmentRule& rule, std::size_t n_firms,
                               std::uint64_t trials, std::uint64_t seed,
                               unsigned threads = 0);

}  // namespace tsel
