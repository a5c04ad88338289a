#include "qfluct/special.hpp"

#include <cmath>

#include "qfluct/constants.hpp"
#include "qfluct/errors.hpp"

namespace qfluct {

namespace {

constexpr double kSeriesLimit = 12.0;

// Hankel expansion Y0(x) = sqrt(2 / (pi x)) [P sin(chi) + Q cos(chi)],
// chi = x - pi/4. Summed until the terms stop decreasing.
double y0_asymptotic(double x) {
  const double eight_x = 8.0 * x;
  double p = 1.0, q = 0.0;
  double term = 1.0;  // a_k(0) / (8x)^k
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -odd * odd / (k * eight_x);  // (4*0 - (2k-1)^2) / (k 8x)
    if (std::abs(term) > std::abs(last)) break;
    last = term;
    // P collects even k, Q odd k, each with sign (-1)^(k/2)
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 1) q += sign * term; else p += sign * term;
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = x - kPi / 4.0;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

}  // namespace

double bessel_j0_series(double x) {
  const double q = x * x / 4.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double neumann_y0(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("neumann_y0 needs a finite x > 0");
  if (x > kSeriesLimit) return y0_asymptotic(x);
  // Y0 = (2/pi) [ (ln(x/2) + gamma) J0(x) + sum_{k>=1} (-1)^{k+1} H_k (x^2/4)^k / (k!)^2 ]
  const double q = x * x / 4.0;
  double term = 1.0, harmonic = 0.0, tail = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    const double t = -term * harmonic;
    tail += t;
    if (std::abs(t) < 1e-18 * (std::abs(tail) + 1e-300) && k > 2) break;
  }
  return 2.0 / kPi * ((std::log(x / 2.0) + kEulerGamma) * bessel_j0_series(x) + tail);
}

}  // namespace qfluct
