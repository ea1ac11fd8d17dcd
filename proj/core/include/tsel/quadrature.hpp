#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tsel::quadrature {

// Adaptive Gauss-Kronrod on [lo, hi].  The integrand must be smooth on the
// open interval; split at any kink or jump before calling.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-12);

// Same, over consecutive cells of `cuts` (sorted, covering [lo, hi]).
double integrate_cells(const std::function<double(double)>& f,
                       std::span<const double> cuts, double abs_tol = 1e-12);

// Sorted, deduplicated cut list on [0,1] containing 0, 1 and every interior
// point of `points`.
std::vector<double> unit_cuts(std::span<const double> points);

// Iterated integral of f(x, y) over the triangle {0 <= y <= x <= 1}.  The
// square is partitioned by `cuts` in both coordinates, so f only needs to be
// smooth inside each cell (and inside each diagonal half-cell).
double integrate_lower_triangle(const std::function<double(double, double)>& f,
                                std::span<const double> cuts,
                                double abs_tol = 1e-11);

}  // namespace tsel::quadrature
