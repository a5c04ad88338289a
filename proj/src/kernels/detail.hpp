#pragma once

// Per-item bodies shared by the serial and OpenMP kernels. Keeping one
// definition of the arithmetic is what makes the two paths bit-identical.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "qfluct/constants.hpp"
#include "qfluct/kernels.hpp"
#include "qfluct/quadrature.hpp"
#include "qfluct/rng.hpp"
#include "qfluct/spectra.hpp"

namespace qfluct::kernels::detail {

struct SegmentValue {
  long double value;
  long double error;
  bool converged;
};

// Integral of exp(-beta omega) sigma(omega) over segment n. The integrand
// is written in the local coordinate u = omega - omega_n so the sawtooth
// and the trigonometric factors are evaluated without argument reduction.
inline SegmentValue damped_segment(const SpectrumModel& model, long double beta, long n,
                                   long double tol) {
  quad::AdaptiveResult<long double> r;
  if (model.kind() == SpectrumKind::casimir) {
    const auto& g = model.geometry();
    const long double L = g.period;
    const long double width = 2 * kPiL / L;
    const long double start = n * width;
    const long double scale = static_cast<long double>(g.area) / (2 * kPiL * kPiL);
    auto f = [=](long double u) {
      const long double omega = start + u;
      return scale * omega * omega * (kPiL - u * L) / 2 * std::exp(-beta * omega);
    };
    r = quad::integrate<long double>(f, 0.0L, width, tol, 0.0L, 64);
  } else {
    const long double z = model.setup().z;
    const long double width = kPiL / (2 * z);
    const long double start = n * width;
    // 2 omega z = n pi + theta on this segment.
    const long double sign = n % 2 == 0 ? 1.0L : -1.0L;
    auto f = [=](long double u) {
      const long double omega = start + u;
      const long double x = 2 * z * omega;
      const long double theta = 2 * z * u;
      const long double sx = sign * std::sin(theta);
      const long double cx = sign * std::cos(theta);
      return ((x * x / 2 - 1) * sx + x * cx) * std::exp(-beta * omega);
    };
    r = quad::integrate<long double>(f, 0.0L, width, tol, 0.0L, 64);
  }
  return {r.value, r.error, r.converged};
}

inline double log_kernel_entry(double ti, double tj, double mu, double eps) {
  const double sep = ti == tj ? eps : std::abs(ti - tj);
  return -std::log(mu * sep) / kTwoPi;
}

inline void quadratic_chunk(std::span<const double> lambdas, double lambda_sum, std::uint64_t seed,
                            long chunk_index, long begin, long end, double* out) {
  rng::NormalStream normals(rng::chunk_seed(seed, static_cast<std::uint64_t>(chunk_index)));
  for (long s = begin; s < end; ++s) {
    // Every term is non-negative, so the result can never round below
    // -lambda_sum.
    double acc = 0.0;
    for (double lam : lambdas) {
      const double z = normals.next();
      acc += lam * (z * z);
    }
    out[s] = acc - lambda_sum;
  }
}

inline void linear_chunk(std::span<const double> coeffs, std::uint64_t seed, long chunk_index,
                         long begin, long end, double* out) {
  rng::NormalStream normals(rng::chunk_seed(seed, static_cast<std::uint64_t>(chunk_index)));
  for (long s = begin; s < end; ++s) {
    double acc = 0.0;
    for (double c : coeffs) acc += c * normals.next();
    out[s] = acc;
  }
}

// Tensor panels for the triangle cubature. The map x = r w, y = r (1 - w)
// sends the triangle to the unit square with Jacobian r; the coincidence
// lines x = 0, y = 0, x + y = 0 become w = 0, w = 1, r = 0. The integrand is
// symmetric under w -> 1 - w, so only w in [0, 1/2] is integrated.
struct PanelNodes {
  std::vector<double> x;       // 21 nodes per panel
  std::vector<double> log_x;
  std::vector<double> log_1mx;
  std::vector<double> wk;      // Kronrod weights scaled to the panel
  std::vector<double> wg;      // Gauss weights (0 on Kronrod-only nodes)
  int panels = 0;
};

inline PanelNodes make_panels(double upper, int levels) {
  const auto edges = quad::graded_edges(upper, levels);
  PanelNodes p;
  p.panels = static_cast<int>(edges.size()) - 1;
  for (int k = 0; k < p.panels; ++k) {
    const double a = edges[static_cast<std::size_t>(k)];
    const double b = edges[static_cast<std::size_t>(k) + 1];
    const double c = (a + b) / 2;
    const double h = (b - a) / 2;
    auto push = [&](double node, double wk, double wg) {
      p.x.push_back(node);
      p.log_x.push_back(std::log(node));
      p.log_1mx.push_back(std::log1p(-node));
      p.wk.push_back(wk * h);
      p.wg.push_back(wg * h);
    };
    for (std::size_t j = 0; j < 10; ++j) {
      const double d = h * static_cast<double>(quad::kKronrodNodes[j]);
      const double wk = static_cast<double>(quad::kKronrodWeights[j]);
      const double wg = j % 2 == 1 ? static_cast<double>(quad::kGaussWeights[j / 2]) : 0.0;
      push(c - d, wk, wg);
      push(c + d, wk, wg);
    }
    push(c, static_cast<double>(quad::kKronrodWeights[10]), 0.0);
  }
  return p;
}

// Contribution of one r panel against every w panel.
inline CubatureSum triangle_r_panel(const PanelNodes& r, const PanelNodes& w, int rp, double a) {
  constexpr int kNodes = 21;
  CubatureSum out;
  for (int wp = 0; wp < w.panels; ++wp) {
    double kron = 0.0, gauss = 0.0;
    for (int i = rp * kNodes; i < (rp + 1) * kNodes; ++i) {
      const double rr = r.x[static_cast<std::size_t>(i)];
      const double b = a + r.log_x[static_cast<std::size_t>(i)];
      const double radial = rr * (1.0 - rr) * b;
      double ik = 0.0, ig = 0.0;
      for (int j = wp * kNodes; j < (wp + 1) * kNodes; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const double v = (b + w.log_x[jj]) * (b + w.log_1mx[jj]);
        ik += w.wk[jj] * v;
        ig += w.wg[jj] * v;
      }
      kron += r.wk[static_cast<std::size_t>(i)] * radial * ik;
      gauss += r.wg[static_cast<std::size_t>(i)] * radial * ig;
    }
    // factor 2 for the mirrored half w in [1/2, 1]
    out.value += 2.0 * kron;
    out.error += 2.0 * std::abs(kron - gauss);
  }
  return out;
}

inline PowerSums chunk_power_sums(std::span<const double> x, double shift) {
  PowerSums p;
  p.min = x.empty() ? 0.0 : x.front();
  for (double v : x) {
    const double d = v - shift;
    double pw = 1.0;
    for (int k = 0; k <= 6; ++k) {
      p.sums[k] += pw;
      pw *= d;
    }
    p.min = std::min(p.min, v);
    if (v < 0.0) ++p.below_zero;
  }
  return p;
}

inline void combine(PowerSums& into, const PowerSums& part, bool first) {
  for (int k = 0; k <= 6; ++k) into.sums[k] += part.sums[k];
  into.min = first ? part.min : std::min(into.min, part.min);
  into.below_zero += part.below_zero;
}

}  // namespace qfluct::kernels::detail
