#pragma once

namespace qfluct {

/// Bessel function of the first kind, order zero, by its ascending series.
/// Accurate for 0 <= x <= 12.
double bessel_j0_series(double x);

/// Neumann function Y0(x) for x > 0. Ascending series up to x = 12, Hankel
/// asymptotic expansion beyond (relative error of order exp(-2x) there).
double neumann_y0(double x);

}  // namespace qfluct
