// Serial reference kernels. These are the straightforward loops the OpenMP
// versions are checked against.

#include "detail.hpp"

namespace qfluct::kernels::serial {

SegmentSums damped_segments(const SpectrumModel& model, long double beta, long segments,
                            long double segment_tol) {
  SegmentSums out;
  out.value.resize(static_cast<std::size_t>(segments));
  out.error.resize(static_cast<std::size_t>(segments));
  for (long n = 0; n < segments; ++n) {
    const auto s = detail::damped_segment(model, beta, n, segment_tol);
    out.value[static_cast<std::size_t>(n)] = s.value;
    out.error[static_cast<std::size_t>(n)] = s.error;
    if (!s.converged) ++out.failed;
  }
  return out;
}

std::vector<double> log_kernel(std::span<const double> times, double mu, double eps) {
  const std::size_t n = times.size();
  std::vector<double> k(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      k[i * n + j] = detail::log_kernel_entry(times[i], times[j], mu, eps);
  return k;
}

std::vector<double> quadratic_samples(std::span<const double> lambdas, double lambda_sum, long count,
                                      std::uint64_t seed, long chunk) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const long chunks = (count + chunk - 1) / chunk;
  for (long c = 0; c < chunks; ++c)
    detail::quadratic_chunk(lambdas, lambda_sum, seed, c, c * chunk, std::min(count, (c + 1) * chunk),
                            out.data());
  return out;
}

std::vector<double> linear_samples(std::span<const double> coeffs, long count, std::uint64_t seed,
                                   long chunk) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const long chunks = (count + chunk - 1) / chunk;
  for (long c = 0; c < chunks; ++c)
    detail::linear_chunk(coeffs, seed, c, c * chunk, std::min(count, (c + 1) * chunk), out.data());
  return out;
}

CubatureSum triangle_log_cubature(double log_mut, int levels) {
  const auto r = detail::make_panels(1.0, levels);
  const auto w = detail::make_panels(0.5, levels);
  CubatureSum total;
  for (int rp = 0; rp < r.panels; ++rp) {
    const auto part = detail::triangle_r_panel(r, w, rp, log_mut);
    total.value += part.value;
    total.error += part.error;
  }
  return total;
}

PowerSums power_sums(std::span<const double> x, double shift) {
  PowerSums total;
  const long n = static_cast<long>(x.size());
  const long chunks = (n + kReduceChunk - 1) / kReduceChunk;
  for (long c = 0; c < chunks; ++c) {
    const long b = c * kReduceChunk;
    const long e = std::min(n, b + kReduceChunk);
    detail::combine(total, detail::chunk_power_sums(x.subspan(b, e - b), shift), c == 0);
  }
  return total;
}

}  // namespace qfluct::kernels::serial
