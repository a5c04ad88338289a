#pragma once

// Discretized time-averaged :phi^2:. On a grid of N points with weights
// w_i the operator becomes sum_i w_i :phi(t_i)^2:, whose law is exactly
// sum_i lambda_i (z_i^2 - 1) with lambda the eigenvalues of W^1/2 K W^1/2.

#include <cstdint>
#include <span>
#include <vector>

#include "qfluct/exec.hpp"
#include "qfluct/kernels.hpp"

namespace qfluct {

/// Midpoint grid t_i = (i + 1/2) h on [0, T]; epsilon regulates the
/// coincident-point value of the kernel.
struct TimeGrid {
  double T = 1.0;
  int N = 2;
  double epsilon = 0.25;

  double spacing() const noexcept { return T / N; }
  std::vector<double> times() const;

  /// N >= 2; epsilon defaults to h/2 and must satisfy 0 < epsilon <= h.
  static TimeGrid midpoint(double T, int N, double epsilon = 0.0);
};

/// Symmetric N x N kernel, row-major, with quadrature weights summing to 1.
struct KernelMatrix {
  int N = 0;
  std::vector<double> K;
  std::vector<double> weights;

  double at(int i, int j) const { return K[static_cast<std::size_t>(i) * N + j]; }
  double weighted_trace() const;
};

struct EigenModel {
  std::vector<double> lambdas;  // ascending, clipped values already set to 0
  int clipped_count = 0;
  double clipped_mass = 0.0;    // sum of |clipped eigenvalues|
  double raw_sum = 0.0;         // sum of eigenvalues before clipping
  double weighted_trace = 0.0;  // sum_i w_i K_ii
  double lambda_sum = 0.0;      // sum of retained eigenvalues
};

struct SampleBatch {
  std::uint64_t seed = 0;
  long count = 0;
  long chunk = kernels::kSampleChunk;
  std::vector<double> values;
  double lower_bound = 0.0;  // -sum lambda for quadratic batches, -inf for linear
};

inline constexpr double kDefaultEigenTol = 1e-10;

/// Kernel of the small-mass Hadamard function on the grid. Requires
/// mu * epsilon < 1.
KernelMatrix build_kernel(const TimeGrid& grid, double mu, Exec exec = Exec::parallel);

/// Eigenvalues of W^1/2 K W^1/2. Values in [-tol max|lambda|, 0) are clipped
/// to 0 and reported; anything more negative throws NumericalFailure.
EigenModel eigen_lambdas(const KernelMatrix& kernel, double tol = kDefaultEigenTol);

/// kappa_l = 2^(l-1) (l-1)! sum_i lambda_i^l, for 2 <= l <= 12.
double trace_cumulant(const EigenModel& model, int ell);

/// Draws of sum_i lambda_i (z_i^2 - 1), reproducible from (seed, count, chunk).
SampleBatch sample_quadratic(const EigenModel& model, long count, std::uint64_t seed,
                             Exec exec = Exec::parallel, long chunk = kernels::kSampleChunk);

/// Draws of sum_i c_i z_i.
SampleBatch sample_linear(std::span<const double> coeffs, long count, std::uint64_t seed,
                          Exec exec = Exec::parallel, long chunk = kernels::kSampleChunk);

/// -sum lambda_i: the infimum of the discretized normal-ordered form.
double lower_bound(const EigenModel& model);

}  // namespace qfluct
