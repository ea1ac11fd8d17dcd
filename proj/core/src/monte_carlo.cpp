#include "tsel/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <thread>

#include "tsel/game.hpp"
#include "tsel/random.hpp"

namespace tsel {
namespace {

constexpr std::uint64_t kBlockTrials = 8192;

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t flips = 0;
  std::vector<std::uint64_t> firsts;
};

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

BlockSums run_block(const AssignmentRule& rule, std::size_t n,
                    std::uint64_t seed, std::uint64_t first,
                    std::uint64_t last) {
  BlockSums out;
  out.firsts.assign(n, 0);
  std::vector<double> thresholds(n);
  std::vector<double> qualities(n);
  std::vector<std::size_t> ranking(n);
  for (std::uint64_t t = first; t < last; ++t) {
    SplitMix64 rng = trial_stream(seed, t);
    rule.draw(n, rng, thresholds);
    for (double& q : qualities) q = rng.uniform();
    out.flips += rank_into(thresholds, qualities, rng, ranking);
    const double tau = kendall_tau_fraction(ranking, qualities);
    out.sum += tau;
    out.sum_sq += tau * tau;
    ++out.firsts[ranking[0]];
  }
  return out;
}

}  // namespace

std::string to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::closed_form:
      return "closed_form";
    case EstimateMethod::quadrature:
      return "quadrature";
    case EstimateMethod::monte_carlo:
      return "monte_carlo";
  }
  return "unknown";
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("TSEL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SimulationSummary simulate(const AssignmentRule& rule, std::size_t n_firms,
                           const SimulationOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("trials must be >= 1");
  rule.check_firms(n_firms);

  const std::uint64_t trials = options.trials;
  const std::uint64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<BlockSums> results(blocks);

  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(
      options.threads == 0 ? default_thread_count() : options.threads, blocks));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      const std::uint64_t first = b * kBlockTrials;
      const std::uint64_t last = std::min(trials, first + kBlockTrials);
      results[b] = run_block(rule, n_firms, options.seed, first, last);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  std::vector<double> sums(blocks);
  std::vector<double> sums_sq(blocks);
  std::vector<std::uint64_t> firsts(n_firms, 0);
  std::uint64_t flips = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    sums[b] = results[b].sum;
    sums_sq[b] = results[b].sum_sq;
    flips += results[b].flips;
    for (std::size_t i = 0; i < n_firms; ++i) firsts[i] += results[b].firsts[i];
  }

  const double count = static_cast<double>(trials);
  const double total = pairwise_sum(sums);
  const double total_sq = pairwise_sum(sums_sq);
  const double mean = total / count;
  const double variance =
      trials > 1 ? std::max(0.0, (total_sq - total * mean) / (count - 1.0))
                 : 0.0;

  SimulationSummary summary;
  summary.inversion = {mean, EstimateMethod::monte_carlo,
                       std::sqrt(variance / count), trials};
  summary.first_rate.resize(n_firms);
  summary.first_rate_std_error.resize(n_firms);
  for (std::size_t i = 0; i < n_firms; ++i) {
    const double p = static_cast<double>(firsts[i]) / count;
    summary.first_rate[i] = p;
    summary.first_rate_std_error[i] = std::sqrt(p * (1.0 - p) / count);
  }
  summary.mean_coin_flips = static_cast<double>(flips) / count;
  return summary;
}

InversionEstimate mc_inversion(const AssignmentRule& rule, std::size_t n_firms,
                               std::uint64_t trials, std::uint64_t seed,
                               unsigned threads) {
  return simulate(rule, n_firms, {trials, seed, threads}).inversion;
}

}  // namespace tsel
