#include "qfluct/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfluct/errors.hpp"
#include "qfluct/kernels.hpp"

namespace qfluct {

Histogram histogram(std::span<const double> samples, int bins, double lo, double hi) {
  if (samples.empty()) throw DomainError("histogram of an empty sample set");
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("histogram range must be finite and non-degenerate");

  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  const double scale = bins / (hi - lo);
  for (double x : samples) {
    if (x < lo) {
      ++h.underflow;
    } else if (x > hi) {
      ++h.overflow;
    } else {
      auto i = static_cast<long>((x - lo) * scale);
      if (i >= bins) i = bins - 1;
      ++h.counts[static_cast<std::size_t>(i)];
    }
  }
  const long inside = static_cast<long>(samples.size()) - h.underflow - h.overflow;
  h.density.assign(static_cast<std::size_t>(bins), 0.0);
  if (inside > 0) {
    const double norm = 1.0 / (static_cast<double>(inside) * h.width());
    for (int i = 0; i < bins; ++i)
      h.density[static_cast<std::size_t>(i)] = static_cast<double>(h.counts[static_cast<std::size_t>(i)]) * norm;
  }
  return h;
}

ShapeEstimate shape(std::span<const double> samples, Exec exec) {
  const long n = static_cast<long>(samples.size());
  if (n < 10) throw DomainError("shape needs at least 10 samples");
  auto sums = [&](double shift) {
    return exec == Exec::parallel ? kernels::omp::power_sums(samples, shift)
                                  : kernels::serial::power_sums(samples, shift);
  };
  const double nd = static_cast<double>(n);
  const auto first = sums(0.0);
  const double mean = first.sums[1] / nd;
  const auto c = sums(mean);
  // Central moments with 1/n, corrected for the residual mean shift.
  const double d1 = c.sums[1] / nd;
  const double m2 = c.sums[2] / nd - d1 * d1;
  const double m3 = c.sums[3] / nd - 3.0 * d1 * c.sums[2] / nd + 2.0 * d1 * d1 * d1;
  const double m4 = c.sums[4] / nd;
  const double m6 = c.sums[6] / nd;

  ShapeEstimate s;
  s.count = n;
  s.min = first.min;
  s.frac_below_zero = static_cast<double>(first.below_zero) / nd;
  s.mean = {mean + d1, std::sqrt(std::max(m2, 0.0) / nd)};
  const double var = m2 * nd / (nd - 1.0);
  s.variance = {var, std::sqrt(std::max(m4 - m2 * m2, 0.0) / nd)};
  const double k3 = m3 * nd * nd / ((nd - 1.0) * (nd - 2.0));
  const double k3_var = (m6 - m3 * m3 - 6.0 * m4 * m2 + 9.0 * m2 * m2 * m2) / nd;
  s.third_cumulant = {k3, std::sqrt(std::max(k3_var, 0.0))};

  if (!(m2 > 0.0)) {
    s.degenerate = true;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.skewness = {nan, std::sqrt(6.0 / nd)};
    s.excess_kurtosis = {nan, std::sqrt(24.0 / nd)};
    return s;
  }
  s.skewness = {m3 / std::pow(m2, 1.5), std::sqrt(6.0 / nd)};
  s.excess_kurtosis = {m4 / (m2 * m2) - 3.0, std::sqrt(24.0 / nd)};
  return s;
}

Range default_range(const ShapeEstimate& s, double lower_bound) {
  const double sd = std::sqrt(std::max(s.variance.value, 0.0));
  const double spread = sd > 0.0 ? sd : 1.0;
  if (std::isfinite(lower_bound)) return {lower_bound, s.mean.value + 8.0 * spread};
  return {s.mean.value - 6.0 * spread, s.mean.value + 6.0 * spread};
}

}  // namespace qfluct
