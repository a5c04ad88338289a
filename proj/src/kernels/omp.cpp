// OpenMP kernels. Chunks are distributed dynamically; partial results land
// in per-chunk slots and are reduced afterwards in chunk order.

#include "detail.hpp"

namespace qfluct::kernels::omp {

SegmentSums damped_segments(const SpectrumModel& model, long double beta, long segments,
                            long double segment_tol) {
  SegmentSums out;
  out.value.resize(static_cast<std::size_t>(segments));
  out.error.resize(static_cast<std::size_t>(segments));
  long failed = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : failed)
  for (long n = 0; n < segments; ++n) {
    const auto s = detail::damped_segment(model, beta, n, segment_tol);
    out.value[static_cast<std::size_t>(n)] = s.value;
    out.error[static_cast<std::size_t>(n)] = s.error;
    if (!s.converged) ++failed;
  }
  out.failed = failed;
  return out;
}

std::vector<double> log_kernel(std::span<const double> times, double mu, double eps) {
  const long n = static_cast<long>(times.size());
  std::vector<double> k(static_cast<std::size_t>(n * n));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      k[static_cast<std::size_t>(i * n + j)] =
          detail::log_kernel_entry(times[static_cast<std::size_t>(i)], times[static_cast<std::size_t>(j)], mu, eps);
  return k;
}

std::vector<double> quadratic_samples(std::span<const double> lambdas, double lambda_sum, long count,
                                      std::uint64_t seed, long chunk) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const long chunks = (count + chunk - 1) / chunk;
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < chunks; ++c)
    detail::quadratic_chunk(lambdas, lambda_sum, seed, c, c * chunk, std::min(count, (c + 1) * chunk),
                            out.data());
  return out;
}

std::vector<double> linear_samples(std::span<const double> coeffs, long count, std::uint64_t seed,
                                   long chunk) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const long chunks = (count + chunk - 1) / chunk;
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < chunks; ++c)
    detail::linear_chunk(coeffs, seed, c, c * chunk, std::min(count, (c + 1) * chunk), out.data());
  return out;
}

CubatureSum triangle_log_cubature(double log_mut, int levels) {
  const auto r = detail::make_panels(1.0, levels);
  const auto w = detail::make_panels(0.5, levels);
  std::vector<CubatureSum> parts(static_cast<std::size_t>(r.panels));
#pragma omp parallel for schedule(dynamic, 1)
  for (int rp = 0; rp < r.panels; ++rp)
    parts[static_cast<std::size_t>(rp)] = detail::triangle_r_panel(r, w, rp, log_mut);
  CubatureSum total;
  for (const auto& p : parts) {
    total.value += p.value;
    total.error += p.error;
  }
  return total;
}

PowerSums power_sums(std::span<const double> x, double shift) {
  const long n = static_cast<long>(x.size());
  const long chunks = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<PowerSums> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
  for (long c = 0; c < chunks; ++c) {
    const long b = c * kReduceChunk;
    const long e = std::min(n, b + kReduceChunk);
    parts[static_cast<std::size_t>(c)] = detail::chunk_power_sums(x.subspan(b, e - b), shift);
  }
  PowerSums total;
  for (long c = 0; c < chunks; ++c) detail::combine(total, parts[static_cast<std::size_t>(c)], c == 0);
  return total;
}

}  // namespace qfluct::kernels::omp
