#pragma once

// Five-regime comparison of the principal's inversion probability and the
// search for the best restricted-interval equilibrium.

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tsel/equilibrium.hpp"

namespace tsel {

inline constexpr double kSymmetricFloor = 5.0 / 24.0 + 1.0 / 82944.0;

struct SearchOptions {
  double resolution = 0.01;
  bool refine = true;
  double refine_tol = 1e-4;
  std::size_t verify_grid = 1000;
  double verify_tol = 1e-8;
  // 0 means default_thread_count().
  unsigned threads = 0;
};

struct IntervalPoint {
  double a = 0.0;
  double b = 1.0;
  double value = 0.0;
  Regime regime = Regime::interior;
  bool verified = false;
};

struct SearchResult {
  IntervalPoint best;
  // Every grid point evaluated, in (a, b) lexicographic order.
  std::vector<IntervalPoint> grid;
  std::size_t evaluations = 0;
  std::size_t rejected = 0;  // failed verification, excluded from `best`
};

// Thread-safe memo of I(equilibrium_interval(a, b)) keyed on exact (a, b).
class IntervalValueCache {
 public:
  // Constructs, verifies and integrates the equilibrium on a miss.
  IntervalPoint get(double a, double b, const SearchOptions& options);
  std::size_t size() const;
  std::size_t misses() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<double, double>, IntervalPoint> values_;
  std::size_t misses_ = 0;
};

// Evaluates every (a, b) with a < b from the two grids, then (optionally)
// refines the best point by alternating golden-section searches in a and b.
SearchResult search_best_interval(std::span<const double> a_grid,
                                  std::span<const double> b_grid,
                                  const SearchOptions& options = {},
                                  IntervalValueCache* cache = nullptr);

// Grids with spacing options.resolution over [0,1], plus for each a the
// b = 1 / (2(1 - a)) where the step regime ends.
SearchResult search_best_interval(const SearchOptions& options = {},
                                  IntervalValueCache* cache = nullptr);

// I(sol.dist) >= 5/24 + 1/82944 - 1e-9.
bool symmetric_equilibrium_floor_check(const EquilibriumSolution& sol);

struct PoaReport {
  long n_firms = 2;
  double same_test = 0.25;
  double correlated = 1.0 / 6.0;
  double iid_opt = 5.0 / 24.0;
  IntervalPoint eq_restricted_best;
  double eq_unrestricted = 0.0;
  double poa_vs_iid = 0.0;
  double poa_vs_correlated = 0.0;
};

// Throws std::invalid_argument for n < 2.
PoaReport poa_report(long n_firms = 2, const SearchOptions& options = {});

}  // namespace tsel
