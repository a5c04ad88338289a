// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to
// compare thread counts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "qfluct/kernels.hpp"
#include "qfluct/quadform.hpp"
#include "qfluct/spectra.hpp"

namespace {

using namespace qfluct;

std::vector<double> grid_times(int n) { return TimeGrid::midpoint(1.0, n).times(); }

std::vector<double> some_lambdas(int n) {
  std::vector<double> l(n);
  for (int i = 0; i < n; ++i) l[i] = 1.0 / ((i + 1.0) * (i + 1.0));
  return l;
}

template <bool Par>
void BM_DampedSegments(benchmark::State& state) {
  const auto model = SpectrumModel::casimir({1.0, 1.0});
  const long segs = state.range(0);
  for (auto _ : state) {
    auto r = Par ? kernels::omp::damped_segments(model, 0.01L, segs, 1e-16L)
                 : kernels::serial::damped_segments(model, 0.01L, segs, 1e-16L);
    benchmark::DoNotOptimize(r.value.data());
  }
}

template <bool Par>
void BM_LogKernel(benchmark::State& state) {
  const auto t = grid_times(static_cast<int>(state.range(0)));
  const double eps = 0.5 / static_cast<double>(t.size());
  for (auto _ : state) {
    auto k = Par ? kernels::omp::log_kernel(t, 0.01, eps) : kernels::serial::log_kernel(t, 0.01, eps);
    benchmark::DoNotOptimize(k.data());
  }
}

template <bool Par>
void BM_QuadraticSamples(benchmark::State& state) {
  const auto l = some_lambdas(200);
  double sum = 0.0;
  for (double x : l) sum += x;
  for (auto _ : state) {
    auto s = Par ? kernels::omp::quadratic_samples(l, sum, state.range(0), 42, kernels::kSampleChunk)
                 : kernels::serial::quadratic_samples(l, sum, state.range(0), 42, kernels::kSampleChunk);
    benchmark::DoNotOptimize(s.data());
  }
}

template <bool Par>
void BM_TriangleCubature(benchmark::State& state) {
  const double a = std::log(0.01);
  for (auto _ : state) {
    auto c = Par ? kernels::omp::triangle_log_cubature(a, static_cast<int>(state.range(0)))
                 : kernels::serial::triangle_log_cubature(a, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(c.value);
  }
}

template <bool Par>
void BM_PowerSums(benchmark::State& state) {
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(static_cast<double>(i));
  for (auto _ : state) {
    auto p = Par ? kernels::omp::power_sums(x, 0.0) : kernels::serial::power_sums(x, 0.0);
    benchmark::DoNotOptimize(p.sums[2]);
  }
}

}  // namespace

BENCHMARK(BM_DampedSegments<false>)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DampedSegments<true>)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogKernel<false>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogKernel<true>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadraticSamples<false>)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadraticSamples<true>)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TriangleCubature<false>)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TriangleCubature<true>)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PowerSums<false>)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PowerSums<true>)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
