#include "qfluct/abel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qfluct/constants.hpp"
#include "qfluct/kernels.hpp"
#include "qfluct/quadrature.hpp"

namespace qfluct {

namespace {

static_assert(std::numeric_limits<long double>::digits >= 64,
              "damped quadrature needs an extended-precision long double");

// Certified bound on int_omega^inf |sigma| exp(-beta omega).
// Casimir: |sigma| <= (A / 2 pi^2)(pi / 2) omega^2.
// CP:      |sigma| <= 2 z^2 omega^2 + 2 z omega + 1.
double tail_bound(const SpectrumModel& model, double beta, double omega) {
  const double e = std::exp(-beta * omega);
  const double m0 = e / beta;
  const double m1 = e * (omega / beta + 1.0 / (beta * beta));
  const double m2 = e * (omega * omega / beta + 2.0 * omega / (beta * beta) + 2.0 / (beta * beta * beta));
  if (model.kind() == SpectrumKind::casimir) {
    return model.geometry().area / (2.0 * kPi * kPi) * (kPi / 2.0) * m2;
  }
  const double z = model.setup().z;
  return 2.0 * z * z * m2 + 2.0 * z * m1 + m0;
}

long segments_for_tail(const SpectrumModel& model, double beta, double target, long cap) {
  const double width = model.segment_length();
  long hi = 1;
  while (tail_bound(model, beta, hi * width) > target) {
    if (hi > cap) return hi;
    hi *= 2;
  }
  long lo = hi / 2;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (tail_bound(model, beta, mid * width) > target) lo = mid; else hi = mid;
  }
  return hi;
}

void validate_betas(std::span<const double> betas) {
  if (betas.size() < 2) throw DomainError("need at least two beta values");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] > 0.0) || !std::isfinite(betas[i]))
      throw DomainError("beta values must be finite and positive");
    if (i > 0 && !(betas[i] < betas[i - 1]))
      throw DomainError("beta values must be strictly decreasing");
  }
}

}  // namespace

DampedIntegral integrate_damped(const SpectrumModel& model, double beta, double tol, Exec exec,
                                long max_segments) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("integrate_damped needs beta > 0");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("integrate_damped needs tol > 0");

  const long needed = segments_for_tail(model, beta, tol / 2.0, max_segments);
  const long segments = std::min(needed, max_segments);
  const long double seg_tol = static_cast<long double>(tol) / 2 / segments;

  const auto sums = exec == Exec::parallel
                        ? kernels::omp::damped_segments(model, beta, segments, seg_tol)
                        : kernels::serial::damped_segments(model, beta, segments, seg_tol);
  long double value = 0;
  long double error = 0;
  for (long n = 0; n < segments; ++n) {
    value += sums.value[static_cast<std::size_t>(n)];
    error += sums.error[static_cast<std::size_t>(n)];
  }

  DampedIntegral out;
  out.beta = beta;
  out.value = static_cast<double>(value);
  out.segments_used = segments;
  out.tail_bound = tail_bound(model, beta, segments * model.segment_length());
  out.quad_error = static_cast<double>(error);

  if (needed > max_segments)
    throw DampedIntegralFailure("damped integral needs more than " + std::to_string(max_segments) +
                                    " segments to certify the tail",
                                out);
  if (sums.failed > 0)
    throw DampedIntegralFailure(std::to_string(sums.failed) + " segment(s) did not converge", out);
  return out;
}

double casimir_damped_modesum(const CasimirGeometry& geom, double beta) {
  if (!(beta > 0.0)) throw DomainError("casimir_damped_modesum needs beta > 0");
  if (!(geom.area > 0.0) || !(geom.period > 0.0)) throw DomainError("invalid Casimir geometry");
  const double L = geom.period;
  // Terms fall like n^-4 once n L >> beta; the remainder after N terms is
  // taken from that asymptote.
  const double ratio = std::min(beta / L, 1e6);
  const long terms = 100'000 + static_cast<long>(50.0 * ratio);
  const double b2 = beta * beta;
  double sum = 0.0;
  for (long n = terms; n >= 1; --n) {
    const double y = n * L;
    const double d = b2 + y * y;
    // Im[2 / (beta - i y)^3] = 2 (3 beta^2 y - y^3) / (beta^2 + y^2)^3
    sum += 2.0 * (3.0 * b2 * y - y * y * y) / (d * d * d) / n;
  }
  const double nt = static_cast<double>(terms);
  sum += -2.0 / (L * L * L) / (3.0 * nt * nt * nt);
  return geom.area / (2.0 * kPi * kPi) * sum;
}

double cp_damped_closed(const CasimirPolderSetup& setup, double beta) {
  if (!(beta > 0.0)) throw DomainError("cp_damped_closed needs beta > 0");
  if (!(setup.z > 0.0)) throw DomainError("invalid Casimir-Polder setup");
  const double z = setup.z;
  const double a = 2.0 * z;
  const double b2 = beta * beta;
  const double d = b2 + a * a;
  const double im3 = 2.0 * (3.0 * b2 * a - a * a * a) / (d * d * d);  // Im[2/(beta - i a)^3]
  const double im1 = a / d;                                          // Im[1/(beta - i a)]
  const double re2 = (b2 - a * a) / (d * d);                         // Re[1/(beta - i a)^2]
  return 2.0 * z * z * im3 - im1 + 2.0 * z * re2;
}

double damped_oracle(const SpectrumModel& model, double beta) {
  return model.kind() == SpectrumKind::casimir ? casimir_damped_modesum(model.geometry(), beta)
                                               : cp_damped_closed(model.setup(), beta);
}

Extrapolation richardson_extrapolate(std::span<const AbelPoint> points,
                                     std::span<const double> value_errors) {
  const std::size_t m = points.size();
  if (m < 2) throw DomainError("extrapolation needs at least two points");
  for (std::size_t i = 0; i < m; ++i) {
    if (!(points[i].beta > 0.0) || !std::isfinite(points[i].beta) || !std::isfinite(points[i].value))
      throw DomainError("extrapolation points must have finite beta > 0");
    if (i > 0 && points[i].beta == points[i - 1].beta) throw DomainError("duplicate beta");
    if (i > 0 && !(points[i].beta < points[i - 1].beta))
      throw DomainError("beta values must be strictly decreasing");
  }
  if (!value_errors.empty() && value_errors.size() != m)
    throw DomainError("value_errors must match the number of points");

  // Neville tableau evaluated at beta = 0, one column at a time.
  // After stage k, p[i] holds the interpolant through points i..i+k.
  std::vector<double> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = points[i].value;
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t i = 0; i + k < m; ++i) {
      const double xi = points[i].beta;
      const double xj = points[i + k].beta;
      p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
    }
  }
  // p[1] was last written at the previous stage: the interpolant through
  // the m-1 smallest betas.
  const double lower_order = p[1];

  // Input noise propagated through the Lagrange weights at beta = 0.
  double noise = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double l = 1.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) l *= points[j].beta / (points[j].beta - points[i].beta);
    const double e = value_errors.empty() ? 0.0 : std::abs(value_errors[i]);
    noise += std::abs(l) * (e + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(points[i].value));
  }

  Extrapolation out;
  out.limit = p[0];
  out.error_estimate = std::abs(p[0] - lower_order) + noise;
  return out;
}

std::vector<double> default_beta_sequence(const SpectrumModel& model, int levels) {
  if (levels < 2) throw DomainError("need at least two beta levels");
  const double beta0 = 1.0 / (2.0 * model.oscillation_scale());
  std::vector<double> betas;
  betas.reserve(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) betas.push_back(std::ldexp(beta0, -k));
  return betas;
}

double energy_from_limit(const SpectrumModel& model, double limit) {
  if (model.kind() == SpectrumKind::casimir) return limit;
  const auto& s = model.setup();
  return s.alpha0 / (4.0 * kPi * s.z * s.z * s.z) * limit;
}

AbelResult abel_limit(const SpectrumModel& model, std::span<const double> betas, double tol,
                      DampedPath path, Exec exec) {
  validate_betas(betas);
  if (!(tol > 0.0)) throw DomainError("abel_limit needs tol > 0");

  AbelResult out;
  std::vector<double> errors;
  for (double beta : betas) {
    if (path == DampedPath::oracle) {
      out.points.push_back({beta, damped_oracle(model, beta)});
      errors.push_back(0.0);
    } else {
      const auto d = integrate_damped(model, beta, tol, exec);
      out.points.push_back({beta, d.value});
      errors.push_back(d.quad_error + d.tail_bound);
    }
  }
  const auto ex = richardson_extrapolate(out.points, errors);
  out.limit = ex.limit;
  out.error_estimate = ex.error_estimate;
  out.energy = energy_from_limit(model, ex.limit);
  out.energy_error = std::abs(energy_from_limit(model, ex.error_estimate));
  return out;
}

double first_period_absolute(const SpectrumModel& model, double beta) {
  if (!(beta >= 0.0)) throw DomainError("first_period_absolute needs beta >= 0");
  const double period = model.oscillation_scale();
  // Fine fixed pieces keep every sign change of sigma near a piece edge.
  constexpr int kPieces = 64;
  double total = 0.0;
  for (int k = 0; k < kPieces; ++k) {
    const double a = period * k / kPieces;
    const double b = period * (k + 1) / kPieces;
    auto f = [&](double w) { return std::abs(model.sigma(w)) * std::exp(-beta * w); };
    total += quad::integrate<double>(f, a, b, 1e-13, 1e-12, 400).value;
  }
  return total;
}

}  // namespace qfluct
