#pragma once

// Gauss-Kronrod 21-point rule with an embedded 10-point Gauss estimate,
// plus a globally adaptive bisection driver. Templated on the working
// real type so the oscillatory integrals can run in extended precision.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace qfluct::quad {

// Abscissae of the 21-point Kronrod rule on [-1, 1] (positive half, the
// last entry is the centre). Odd indices are the 10-point Gauss nodes.
inline constexpr std::array<long double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003L, 0.973906528517171720077964012084452L,
    0.930157491355708226001207180059508L, 0.865063366688984510732096688423493L,
    0.780817726586416897063717578345042L, 0.679409568299024406234327365114874L,
    0.562757134668604683339000099272694L, 0.433395394129247190799265943165784L,
    0.294392862701460198131126603103866L, 0.148874338981631210884826001129720L,
    0.000000000000000000000000000000000L};

inline constexpr std::array<long double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192L, 0.032558162307964727478818972459390L,
    0.054755896574351996031381300244580L, 0.075039674810919952767043140916190L,
    0.093125454583697605535065465083366L, 0.109387158802297641899210590325805L,
    0.123491976262065851077600525478316L, 0.134709217311473325928054001771707L,
    0.142775938577060080797094273138717L, 0.147739104901338491374841515972068L,
    0.149445554002916905664936468389821L};

// Weights of the 10-point Gauss rule at kKronrodNodes[1], [3], ..., [9].
inline constexpr std::array<long double, 5> kGaussWeights = {
    0.066671344308688137593568809893332L, 0.149451349150580593145776339657697L,
    0.219086362515982043995534934228163L, 0.269266719309996355091226921569469L,
    0.295524224714752870173892994651338L};

template <class Real>
struct RuleResult {
  Real value{};
  Real error{};   // |K21 - G10|
  Real absval{};  // K21 applied to |f|, used for the rounding floor
};

template <class Real, class F>
RuleResult<Real> gauss_kronrod21(F&& f, Real a, Real b) {
  const Real centre = (a + b) / 2;
  const Real half = (b - a) / 2;
  const Real fc = f(centre);
  Real kronrod = static_cast<Real>(kKronrodWeights[10]) * fc;
  Real gauss = 0;
  Real absval = std::abs(kronrod);
  for (std::size_t j = 0; j < 10; ++j) {
    const Real dx = half * static_cast<Real>(kKronrodNodes[j]);
    const Real f1 = f(centre - dx);
    const Real f2 = f(centre + dx);
    const Real w = static_cast<Real>(kKronrodWeights[j]);
    kronrod += w * (f1 + f2);
    absval += w * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += static_cast<Real>(kGaussWeights[j / 2]) * (f1 + f2);
  }
  RuleResult<Real> r;
  r.value = kronrod * half;
  r.error = std::abs((kronrod - gauss) * half);
  r.absval = absval * std::abs(half);
  return r;
}

template <class Real>
struct AdaptiveResult {
  Real value{};
  Real error{};
  int intervals = 0;
  bool converged = false;
};

/// Globally adaptive integration of f over [a, b]. Stops when the summed
/// error estimate drops below max(abs_tol, rel_tol * |value|) or below the
/// rounding floor of the working type; gives up after max_intervals.
template <class Real, class F>
AdaptiveResult<Real> integrate(F&& f, Real a, Real b, Real abs_tol, Real rel_tol = 0,
                               int max_intervals = 200) {
  struct Piece {
    Real a, b;
    RuleResult<Real> r;
    bool operator<(const Piece& o) const { return r.error < o.r.error; }
  };
  const Real floor_factor = 50 * std::numeric_limits<Real>::epsilon();

  std::priority_queue<Piece> heap;
  Piece first{a, b, gauss_kronrod21<Real>(f, a, b)};
  Real value = first.r.value;
  Real error = first.r.error;
  Real absval = first.r.absval;
  heap.push(first);
  int intervals = 1;

  auto done = [&] {
    const Real target = std::max(abs_tol, rel_tol * std::abs(value));
    return error <= target || error <= floor_factor * absval;
  };

  while (!done() && intervals < max_intervals) {
    Piece worst = heap.top();
    heap.pop();
    const Real mid = (worst.a + worst.b) / 2;
    Piece left{worst.a, mid, gauss_kronrod21<Real>(f, worst.a, mid)};
    Piece right{mid, worst.b, gauss_kronrod21<Real>(f, mid, worst.b)};
    value += left.r.value + right.r.value - worst.r.value;
    error += left.r.error + right.r.error - worst.r.error;
    absval += left.r.absval + right.r.absval - worst.r.absval;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Re-sum from the pieces so the reported value carries no update drift.
  AdaptiveResult<Real> out;
  out.converged = done();
  out.intervals = intervals;
  std::vector<Piece> pieces;
  pieces.reserve(heap.size());
  while (!heap.empty()) {
    pieces.push_back(heap.top());
    heap.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (const auto& p : pieces) {
    out.value += p.r.value;
    out.error += p.r.error;
  }
  return out;
}

/// Geometric panel edges 0 < x_K < ... < x_1 < x_0 = length with ratio 1/2,
/// returned ascending and starting at 0. Used for endpoint log singularities.
inline std::vector<double> graded_edges(double length, int levels) {
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(levels) + 2);
  edges.push_back(0.0);
  for (int k = levels; k >= 0; --k) edges.push_back(std::ldexp(length, -k));
  return edges;
}

}  // namespace qfluct::quad
