#include "qfluct/field2d.hpp"

#include <cmath>
#include <string>

#include "qfluct/constants.hpp"
#include "qfluct/errors.hpp"
#include "qfluct/kernels.hpp"
#include "qfluct/quadform.hpp"
#include "qfluct/quadrature.hpp"
#include "qfluct/special.hpp"

namespace qfluct {

namespace {

constexpr int kGradedLevels = 60;

void validate(const ModelParams& p) {
  if (!(p.mu > 0.0) || !(p.T > 0.0) || !std::isfinite(p.mu) || !std::isfinite(p.T))
    throw DomainError("model needs mu > 0 and T > 0");
}

// int_0^1 r (1 - r) ln^k r dr = (-1)^k k! (2^-(k+1) - 3^-(k+1))
double radial_log_moment(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  return sign * f * (std::pow(2.0, -(k + 1)) - std::pow(3.0, -(k + 1)));
}

// int_0^1 r (1 - r) (a + ln r)^k dr
double radial_shifted_moment(double a, int k) {
  double total = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    total += binom * std::pow(a, k - j) * radial_log_moment(j);
    binom = binom * (k - j) / (j + 1);
  }
  return total;
}

MomentResult trace_moment(const ModelParams& params, int order, int points, Exec exec) {
  const TimeGrid grid = TimeGrid::midpoint(params.T, points);
  const auto model = eigen_lambdas(build_kernel(grid, params.mu, exec));
  MomentResult r;
  r.value = trace_cumulant(model, order);
  r.method = MomentMethod::trace;
  // Discretization error is not estimated here; compare against the
  // quadrature route instead.
  r.error = 0.0;
  r.order = order;
  return r;
}

}  // namespace

std::string_view method_name(MomentMethod m) noexcept {
  switch (m) {
    case MomentMethod::quadrature: return "quadrature";
    case MomentMethod::closed_form: return "closed_form";
    case MomentMethod::leading_log: return "leading_log";
    case MomentMethod::trace: return "trace";
  }
  return "unknown";
}

MomentMethod method_from_name(std::string_view name) {
  for (auto m : {MomentMethod::quadrature, MomentMethod::closed_form, MomentMethod::leading_log,
                 MomentMethod::trace})
    if (method_name(m) == name) return m;
  throw DomainError("unknown moment method '" + std::string(name) + "'");
}

double mu_from_mass(double m) { return std::exp(kEulerGamma) * m / 2.0; }

double hadamard_log(double t1, double t2, double mu) {
  if (t1 == t2) throw DomainError("Hadamard function diverges at coincident points");
  if (!(mu > 0.0)) throw DomainError("hadamard_log needs mu > 0");
  return -std::log(mu * std::abs(t1 - t2)) / kTwoPi;
}

double hadamard_massive(double t1, double t2, double m) {
  if (t1 == t2) throw DomainError("Hadamard function diverges at coincident points");
  if (!(m > 0.0)) throw DomainError("hadamard_massive needs m > 0");
  return -0.25 * neumann_y0(m * std::abs(t1 - t2));
}

double second_moment_closed(double mu_t) {
  if (!(mu_t > 0.0)) throw DomainError("second_moment_closed needs mu T > 0");
  const double a = std::log(mu_t);
  return (a * a - 3.0 * a + 3.5) / (2.0 * kPi * kPi);
}

double third_moment_closed(double mu_t) {
  if (!(mu_t > 0.0)) throw DomainError("third_moment_closed needs mu T > 0");
  const double a = std::log(mu_t);
  // With b = a + ln r, the angular integral of (b + ln w)(b + ln(1-w)) over
  // w in [0,1] is b^2 - 2b + (2 - pi^2/6).
  const double c = 2.0 - kPi * kPi / 6.0;
  const double j = radial_shifted_moment(a, 3) - 2.0 * radial_shifted_moment(a, 2) +
                   c * radial_shifted_moment(a, 1);
  return -6.0 / (kPi * kPi * kPi) * j;
}

MomentResult second_moment(const ModelParams& params, MomentMethod method, int trace_points,
                           Exec exec) {
  validate(params);
  const double a = std::log(params.mu_t());
  MomentResult r;
  r.method = method;
  r.order = 2;
  switch (method) {
    case MomentMethod::closed_form:
      r.value = second_moment_closed(params.mu_t());
      break;
    case MomentMethod::leading_log:
      r.value = a * a / (2.0 * kPi * kPi);
      break;
    case MomentMethod::trace:
      return trace_moment(params, 2, trace_points, exec);
    case MomentMethod::quadrature: {
      // (2/T^2) int int G^2 = (4/T^2) int_0^T (T - s) G(s)^2 ds
      const double T = params.T;
      const double mu = params.mu;
      auto f = [&](double s) {
        const double g = std::log(mu * s) / kTwoPi;
        return (T - s) * g * g;
      };
      const auto edges = quad::graded_edges(T, kGradedLevels);
      double value = 0.0, error = 0.0;
      for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const auto piece = quad::integrate<double>(f, edges[k], edges[k + 1], 0.0, 1e-14, 100);
        if (!piece.converged && piece.error > 1e-10 * std::abs(piece.value) + 1e-300)
          throw NumericalFailure("second-moment quadrature did not converge");
        value += piece.value;
        error += piece.error;
      }
      r.value = 4.0 / (T * T) * value;
      r.error = 4.0 / (T * T) * error;
      break;
    }
  }
  return r;
}

MomentResult third_moment(const ModelParams& params, MomentMethod method, int trace_points,
                          Exec exec) {
  validate(params);
  const double a = std::log(params.mu_t());
  MomentResult r;
  r.method = method;
  r.order = 3;
  switch (method) {
    case MomentMethod::closed_form:
      r.value = third_moment_closed(params.mu_t());
      break;
    case MomentMethod::leading_log:
      r.value = -a * a * a / (kPi * kPi * kPi);
      break;
    case MomentMethod::trace:
      return trace_moment(params, 3, trace_points, exec);
    case MomentMethod::quadrature: {
      // Ordering t1 < t2 < t3 and integrating out t1 leaves
      //   (48/T^3)(-1/2pi)^3 T^3 J,  J = int_{x+y<=1} (1-x-y) L(x) L(y) L(x+y).
      const auto sum = exec == Exec::parallel ? kernels::omp::triangle_log_cubature(a, kGradedLevels)
                                              : kernels::serial::triangle_log_cubature(a, kGradedLevels);
      const double scale = -6.0 / (kPi * kPi * kPi);
      r.value = scale * sum.value;
      r.error = std::abs(scale) * sum.error;
      if (!std::isfinite(r.value)) throw NumericalFailure("third-moment cubature failed");
      break;
    }
  }
  return r;
}

double skewness_ratio(double second, double third) {
  if (!(second > 0.0)) throw DomainError("second moment must be positive");
  if (!(third > 0.0)) throw DomainError("third moment must be positive for the ratio");
  return std::cbrt(third) / std::sqrt(second);
}

double skewness_ratio(const ModelParams& params) {
  validate(params);
  return skewness_ratio(second_moment_closed(params.mu_t()), third_moment_closed(params.mu_t()));
}

}  // namespace qfluct
