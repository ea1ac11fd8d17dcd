#include "tsel/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "tsel/inversion.hpp"
#include "tsel/monte_carlo.hpp"
#include "tsel/optimal.hpp"

namespace tsel {
namespace {

IntervalPoint evaluate(double a, double b, const SearchOptions& options) {
  const EquilibriumSolution sol = equilibrium_interval(a, b);
  IntervalPoint p{a, b, 0.0, sol.regime, false};
  p.verified =
      verify_equilibrium(sol, options.verify_grid, options.verify_tol).pass;
  p.value = inversion_iid(sol.dist).value;
  return p;
}

bool better(const IntervalPoint& x, const std::optional<IntervalPoint>& best) {
  return x.verified && (!best || x.value < best->value);
}

// Minimizes f on [lo, hi] by golden-section search.
template <typename F>
double golden_minimize(F&& f, double lo, double hi, double tol) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace

IntervalPoint IntervalValueCache::get(double a, double b,
                                      const SearchOptions& options) {
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(mutex_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }
  const IntervalPoint p = evaluate(a, b, options);
  std::lock_guard lock(mutex_);
  if (values_.emplace(key, p).second) ++misses_;
  return p;
}

std::size_t IntervalValueCache::size() const {
  std::lock_guard lock(mutex_);
  return values_.size();
}

std::size_t IntervalValueCache::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

SearchResult search_best_interval(std::span<const double> a_grid,
                                  std::span<const double> b_grid,
                                  const SearchOptions& options,
                                  IntervalValueCache* cache) {
  IntervalValueCache local;
  IntervalValueCache& memo = cache != nullptr ? *cache : local;
  const std::size_t misses_before = memo.misses();

  std::vector<std::pair<double, double>> cells;
  for (double a : a_grid) {
    require_unit_interval(a, "grid value a");
    for (double b : b_grid) {
      require_unit_interval(b, "grid value b");
      if (a < b) cells.emplace_back(a, b);
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  if (cells.empty()) throw std::invalid_argument("search grid has no a < b");

  SearchResult result;
  result.grid.resize(cells.size());
  const unsigned threads = std::max(
      1u, std::min<unsigned>(options.threads == 0 ? default_thread_count()
                                                  : options.threads,
                             static_cast<unsigned>(cells.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      result.grid[i] = memo.get(cells[i].first, cells[i].second, options);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  std::optional<IntervalPoint> best;
  for (const IntervalPoint& p : result.grid) {
    if (!p.verified) ++result.rejected;
    if (better(p, best)) best = p;
  }
  if (!best) throw std::runtime_error("no grid equilibrium passed verification");

  if (options.refine && best->regime == Regime::interior) {
    const double step = options.resolution;
    double a = best->a;
    double b = best->b;
    auto value_at = [&](double x, double y) {
      if (!(x < y)) return 1.0;
      const IntervalPoint p = memo.get(x, y, options);
      return p.verified ? p.value : 1.0;
    };
    for (int round = 0; round < 20; ++round) {
      const double a_new = golden_minimize(
          [&](double x) { return value_at(x, b); }, std::max(0.0, a - step),
          std::min(b, a + step), options.refine_tol);
      const double b_new = golden_minimize(
          [&](double y) { return value_at(a_new, y); },
          std::max(a_new, b - step), std::min(1.0, b + step),
          options.refine_tol);
      const bool settled = std::abs(a_new - a) < options.refine_tol &&
                           std::abs(b_new - b) < options.refine_tol;
      a = a_new;
      b = b_new;
      if (settled) break;
    }
    for (double x : {0.0, a}) {
      if (x < b) {
        const IntervalPoint p = memo.get(x, b, options);
        if (better(p, best)) best = p;
      }
    }
  }
  result.best = *best;
  result.evaluations = memo.misses() - misses_before;
  return result;
}

SearchResult search_best_interval(const SearchOptions& options,
                                  IntervalValueCache* cache) {
  if (!(options.resolution > 0.0 && options.resolution <= 0.5)) {
    throw std::invalid_argument("resolution must lie in (0, 0.5]");
  }
  const auto steps =
      static_cast<std::size_t>(std::llround(1.0 / options.resolution));
  std::vector<double> a_grid;
  std::vector<double> b_grid;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double v = std::min(1.0, static_cast<double>(k) * options.resolution);
    a_grid.push_back(v);
    b_grid.push_back(v);
  }
  for (double a : a_grid) {
    const double boundary = 1.0 / (2.0 * (1.0 - a));
    if (a < 1.0 && boundary <= 1.0) b_grid.push_back(boundary);
  }
  std::sort(b_grid.begin(), b_grid.end());
  b_grid.erase(std::unique(b_grid.begin(), b_grid.end()), b_grid.end());
  return search_best_interval(a_grid, b_grid, options, cache);
}

bool symmetric_equilibrium_floor_check(const EquilibriumSolution& sol) {
  return inversion_iid(sol.dist).value >= kSymmetricFloor - 1e-9;
}

PoaReport poa_report(long n_firms, const SearchOptions& options) {
  if (n_firms < 2) throw std::invalid_argument("need at least two firms");
  PoaReport r;
  r.n_firms = n_firms;
  r.same_test = to_double(optimal_same_test().value);
  r.correlated = to_double(optimal_value_correlated(n_firms));
  r.iid_opt = inversion_iid(optimal_iid()).value;
  r.eq_restricted_best = search_best_interval(options).best;
  r.eq_unrestricted = inversion_iid(equilibrium_unrestricted().dist).value;
  r.poa_vs_iid = r.eq_unrestricted / r.iid_opt;
  r.poa_vs_correlated = r.eq_unrestricted / r.correlated;
  return r;
}

}  // namespace tsel
