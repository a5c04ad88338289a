#pragma once

// Data-parallel inner loops. Each kernel exists twice: a plain serial
// reference in kernels::serial and an OpenMP version in kernels::omp.
// Work is cut into fixed chunks and partial results are combined in chunk
// order, so both versions return bit-identical output for any thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "qfluct/exec.hpp"
#include "qfluct/spectra.hpp"

namespace qfluct::kernels {

struct SegmentSums {
  std::vector<long double> value;
  std::vector<long double> error;
  long failed = 0;  // segments whose adaptive rule hit its interval cap
};

struct CubatureSum {
  double value = 0.0;
  double error = 0.0;
};

/// Raw power sums of (x - shift): sums[k] = sum (x - shift)^k, k = 0..6.
struct PowerSums {
  double sums[7] = {};
  double min = 0.0;
  long below_zero = 0;
};

inline constexpr long kSampleChunk = 4096;
inline constexpr long kReduceChunk = 1 << 16;

namespace serial {

SegmentSums damped_segments(const SpectrumModel& model, long double beta, long segments,
                            long double segment_tol);

/// Row-major N x N matrix of -(1/2pi) ln(mu |t_i - t_j|), with
/// -(1/2pi) ln(mu eps) on the diagonal.
std::vector<double> log_kernel(std::span<const double> times, double mu, double eps);

/// count draws of sum_i lambda_i z_i^2 - lambda_sum.
std::vector<double> quadratic_samples(std::span<const double> lambdas, double lambda_sum, long count,
                                      std::uint64_t seed, long chunk);

/// count draws of sum_i c_i z_i.
std::vector<double> linear_samples(std::span<const double> coeffs, long count, std::uint64_t seed,
                                   long chunk);

/// int int_{x,y >= 0, x+y <= 1} (1-x-y) L(x) L(y) L(x+y) dx dy with
/// L(s) = log_mut + ln s, on graded tensor panels.
CubatureSum triangle_log_cubature(double log_mut, int levels);

PowerSums power_sums(std::span<const double> x, double shift);

}  // namespace serial

namespace omp {

SegmentSums damped_segments(const SpectrumModel& model, long double beta, long segments,
                            long double segment_tol);
std::vector<double> log_kernel(std::span<const double> times, double mu, double eps);
std::vector<double> quadratic_samples(std::span<const double> lambdas, double lambda_sum, long count,
                                      std::uint64_t seed, long chunk);
std::vector<double> linear_samples(std::span<const double> coeffs, long count, std::uint64_t seed,
                                   long chunk);
CubatureSum triangle_log_cubature(double log_mut, int levels);
PowerSums power_sums(std::span<const double> x, double shift);

}  // namespace omp

}  // namespace qfluct::kernels
