#include "qfluct/quadform.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qfluct/errors.hpp"

namespace qfluct {

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(static_cast<std::size_t>(N));
  const double h = spacing();
  for (int i = 0; i < N; ++i) t[static_cast<std::size_t>(i)] = (i + 0.5) * h;
  return t;
}

TimeGrid TimeGrid::midpoint(double T, int N, double epsilon) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("time grid needs T > 0");
  if (N < 2) throw DomainError("time grid needs N >= 2");
  const double h = T / N;
  if (epsilon == 0.0) epsilon = h / 2.0;
  if (!(epsilon > 0.0) || epsilon > h) throw DomainError("time grid needs 0 < epsilon <= h");
  return TimeGrid{T, N, epsilon};
}

double KernelMatrix::weighted_trace() const {
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += weights[static_cast<std::size_t>(i)] * at(i, i);
  return s;
}

KernelMatrix build_kernel(const TimeGrid& grid, double mu, Exec exec) {
  if (!(mu > 0.0)) throw DomainError("build_kernel needs mu > 0");
  if (!(mu * grid.epsilon < 1.0)) throw DomainError("build_kernel needs mu * epsilon < 1");
  if (grid.N < 1) throw DomainError("build_kernel needs a non-empty grid");
  const auto t = grid.times();
  KernelMatrix k;
  k.N = grid.N;
  k.K = exec == Exec::parallel ? kernels::omp::log_kernel(t, mu, grid.epsilon)
                               : kernels::serial::log_kernel(t, mu, grid.epsilon);
  k.weights.assign(static_cast<std::size_t>(grid.N), grid.spacing() / grid.T);
  return k;
}

EigenModel eigen_lambdas(const KernelMatrix& kernel, double tol) {
  const int n = kernel.N;
  if (n < 1 || kernel.K.size() != static_cast<std::size_t>(n) * n || kernel.weights.size() != static_cast<std::size_t>(n))
    throw DomainError("malformed kernel matrix");
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    const double wi = std::sqrt(kernel.weights[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n; ++j) {
      const double v = kernel.at(i, j);
      if (!std::isfinite(v)) throw DomainError("kernel matrix has non-finite entries");
      a(i, j) = wi * v * std::sqrt(kernel.weights[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eigendecomposition failed");

  EigenModel m;
  m.weighted_trace = kernel.weighted_trace();
  const auto& ev = solver.eigenvalues();
  double largest = 0.0;
  for (int i = 0; i < n; ++i) largest = std::max(largest, std::abs(ev(i)));
  m.lambdas.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double lam = ev(i);
    m.raw_sum += lam;
    if (lam < 0.0) {
      if (lam < -tol * largest)
        throw NumericalFailure("kernel is not positive semidefinite: eigenvalue " + std::to_string(lam));
      ++m.clipped_count;
      m.clipped_mass += -lam;
      lam = 0.0;
    }
    m.lambdas[static_cast<std::size_t>(i)] = lam;
  }
  for (double lam : m.lambdas) m.lambda_sum += lam;
  return m;
}

double trace_cumulant(const EigenModel& model, int ell) {
  if (ell < 2 || ell > 12) throw DomainError("trace_cumulant supports 2 <= ell <= 12");
  double power_sum = 0.0;
  for (double lam : model.lambdas) power_sum += std::pow(lam, ell);
  double weight = std::ldexp(1.0, ell - 1);
  for (int i = 2; i < ell; ++i) weight *= i;
  return weight * power_sum;
}

SampleBatch sample_quadratic(const EigenModel& model, long count, std::uint64_t seed, Exec exec,
                             long chunk) {
  if (count < 1) throw DomainError("sample_quadratic needs count >= 1");
  if (chunk < 1) throw DomainError("chunk size must be positive");
  SampleBatch b;
  b.seed = seed;
  b.count = count;
  b.chunk = chunk;
  b.lower_bound = lower_bound(model);
  b.values = exec == Exec::parallel
                 ? kernels::omp::quadratic_samples(model.lambdas, model.lambda_sum, count, seed, chunk)
                 : kernels::serial::quadratic_samples(model.lambdas, model.lambda_sum, count, seed, chunk);
  return b;
}

SampleBatch sample_linear(std::span<const double> coeffs, long count, std::uint64_t seed, Exec exec,
                          long chunk) {
  if (count < 1) throw DomainError("sample_linear needs count >= 1");
  if (chunk < 1) throw DomainError("chunk size must be positive");
  SampleBatch b;
  b.seed = seed;
  b.count = count;
  b.chunk = chunk;
  b.lower_bound = -std::numeric_limits<double>::infinity();
  b.values = exec == Exec::parallel ? kernels::omp::linear_samples(coeffs, count, seed, chunk)
                                    : kernels::serial::linear_samples(coeffs, count, seed, chunk);
  return b;
}

double lower_bound(const EigenModel& model) { return -model.lambda_sum; }

}  // namespace qfluct
