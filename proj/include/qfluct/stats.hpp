#pragma once

// Histograms and shape estimators for sample batches.

#include <span>
#include <vector>

#include "qfluct/exec.hpp"

namespace qfluct {

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<long> counts;
  std::vector<double> density;  // normalized over the in-range samples
  long underflow = 0;
  long overflow = 0;

  int bins() const noexcept { return static_cast<int>(counts.size()); }
  double width() const noexcept { return (hi - lo) / bins(); }
  double left(int i) const noexcept { return lo + i * width(); }
  double right(int i) const noexcept { return i + 1 == bins() ? hi : lo + (i + 1) * width(); }
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct ShapeEstimate {
  long count = 0;
  Estimate mean;
  Estimate variance;          // n - 1 denominator
  Estimate skewness;          // g1 = m3 / m2^(3/2), se sqrt(6/n)
  Estimate excess_kurtosis;   // g2 = m4 / m2^2 - 3, se sqrt(24/n)
  Estimate third_cumulant;    // k3 = n^2 m3 / ((n-1)(n-2))
  double min = 0.0;
  double frac_below_zero = 0.0;
  bool degenerate = false;    // zero variance: skewness and kurtosis are NaN
};

/// Uniform bins over [lo, hi). Samples outside go to the underflow and
/// overflow tallies; the last bin is closed at hi.
Histogram histogram(std::span<const double> samples, int bins, double lo, double hi);

/// Requires at least 10 samples.
ShapeEstimate shape(std::span<const double> samples, Exec exec = Exec::parallel);

/// Default plotting range: [lower_bound, mean + 8 sd] for a quadratic batch
/// (finite lower bound), mean +- 6 sd otherwise.
struct Range {
  double lo;
  double hi;
};
Range default_range(const ShapeEstimate& s, double lower_bound);

}  // namespace qfluct
