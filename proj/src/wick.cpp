#include "qfluct/wick.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "qfluct/constants.hpp"
#include "qfluct/errors.hpp"

namespace qfluct {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t b = 1;
  for (int i = 1; i <= k; ++i) b = b * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return b;
}

// Depth-first matching of the lowest free leg. `allowed(a, b)` filters pairs.
template <class Out, class Allowed>
void match_legs(std::vector<int>& free_legs, std::vector<std::pair<int, int>>& current, Out& out,
                Allowed allowed) {
  if (free_legs.empty()) {
    out.push_back({current});
    return;
  }
  const int first = free_legs.front();
  for (std::size_t k = 1; k < free_legs.size(); ++k) {
    const int partner = free_legs[k];
    if (!allowed(first, partner)) continue;
    std::vector<int> rest;
    rest.reserve(free_legs.size() - 2);
    for (std::size_t j = 1; j < free_legs.size(); ++j)
      if (j != k) rest.push_back(free_legs[j]);
    current.emplace_back(first, partner);
    match_legs(rest, current, out, allowed);
    current.pop_back();
  }
}

}  // namespace

std::uint64_t double_factorial_odd(int n) {
  if (n < 0) throw DomainError("double_factorial_odd needs n >= 0");
  std::uint64_t f = 1;
  for (int k = 2 * n - 1; k > 1; k -= 2) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::vector<Pairing> enumerate_pairings(int n) {
  if (n < 1) throw DomainError("enumerate_pairings needs n >= 1");
  if (n > kMaxPairingOrder)
    throw CapacityError("enumerate_pairings supports n <= " + std::to_string(kMaxPairingOrder));
  std::vector<int> legs(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < 2 * n; ++i) legs[static_cast<std::size_t>(i)] = i;
  std::vector<Pairing> out;
  out.reserve(double_factorial_odd(n));
  std::vector<std::pair<int, int>> current;
  match_legs(legs, current, out, [](int, int) { return true; });
  return out;
}

double gaussian_moment(int n, double variance) {
  if (n < 0) throw DomainError("gaussian_moment needs n >= 0");
  return static_cast<double>(double_factorial_odd(n)) * std::pow(variance, n);
}

double gaussian_density(double x, double variance) {
  if (!(variance > 0.0)) throw DomainError("gaussian_density needs variance > 0");
  return std::exp(-x * x / (2.0 * variance)) / std::sqrt(kTwoPi * variance);
}

std::vector<VertexMatching> enumerate_vertex_matchings(int n) {
  if (n < 1) throw DomainError("enumerate_vertex_matchings needs n >= 1");
  if (n > kMaxMatchingOrder)
    throw CapacityError("enumerate_vertex_matchings supports n <= " + std::to_string(kMaxMatchingOrder));
  std::vector<int> legs(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < 2 * n; ++i) legs[static_cast<std::size_t>(i)] = i;
  std::vector<VertexMatching> out;
  std::vector<std::pair<int, int>> current;
  match_legs(legs, current, out, [](int a, int b) { return a / 2 != b / 2; });
  return out;
}

std::uint64_t vertex_matching_count(int n) {
  if (n < 0) throw DomainError("vertex_matching_count needs n >= 0");
  // Alternating sum; accumulate in signed 128-bit to avoid wraparound.
  __int128 total = 0;
  for (int k = 0; k <= n; ++k) {
    const __int128 term = static_cast<__int128>(binomial(n, k)) * double_factorial_odd(n - k);
    total += k % 2 == 0 ? term : -term;
  }
  return static_cast<std::uint64_t>(total);
}

std::uint64_t cycle_weight(int length) {
  if (length < 2) throw DomainError("cycles need length >= 2");
  return (std::uint64_t{1} << (length - 1)) * factorial(length - 1);
}

std::vector<int> cycle_type(const VertexMatching& m, int n) {
  // partner[leg] = leg it is contracted with
  std::vector<int> partner(static_cast<std::size_t>(2 * n), -1);
  for (auto [a, b] : m.pairs) {
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> lengths;
  for (int v = 0; v < n; ++v) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    // Walk: leave vertex through one leg, arrive at the partner's vertex,
    // leave through that vertex's other leg.
    int len = 0;
    int leg = 2 * v;
    do {
      seen[static_cast<std::size_t>(leg / 2)] = true;
      ++len;
      const int arrived = partner[static_cast<std::size_t>(leg)];
      leg = arrived ^ 1;
    } while (leg / 2 != v);
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

std::vector<CyclePartition> cycle_partitions(int n) {
  if (n < 1) throw DomainError("cycle_partitions needs n >= 1");
  if (n > kMaxCycleOrder)
    throw CapacityError("cycle_partitions supports n <= " + std::to_string(kMaxCycleOrder));

  std::vector<CyclePartition> out;
  std::vector<int> parts;
  // Integer partitions of n into parts >= 2, non-increasing.
  std::function<void(int, int)> recurse = [&](int remaining, int max_part) {
    if (remaining == 0) {
      CyclePartition cp;
      cp.cycle_lengths = parts;
      // n! / (prod l! prod m_l!) labelled set partitions of this shape
      std::uint64_t denom = 1;
      std::uint64_t weight = 1;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        denom *= factorial(parts[i]);
        weight *= cycle_weight(parts[i]);
      }
      for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        denom *= factorial(static_cast<int>(j - i));
        i = j;
      }
      cp.set_partitions = factorial(n) / denom;
      cp.weight_per_partition = weight;
      cp.multiplicity = cp.set_partitions * weight;
      out.push_back(std::move(cp));
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 2; --p) {
      if (remaining - p == 1) continue;
      parts.push_back(p);
      recurse(remaining - p, p);
      parts.pop_back();
    }
  };
  recurse(n, n);
  return out;
}

MomentSet moments_from_cumulants(std::span<const double> kappas) {
  const std::size_t k = kappas.size();
  MomentSet out;
  out.cumulants.assign(kappas.begin(), kappas.end());
  // mu[0] = 1 sentinel
  std::vector<double> mu(k + 1, 0.0);
  mu[0] = 1.0;
  for (std::size_t n = 1; n <= k; ++n) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j)
      acc += static_cast<double>(binomial(static_cast<int>(n - 1), static_cast<int>(j - 1))) *
             kappas[j - 1] * mu[n - j];
    mu[n] = acc;
  }
  out.moments.assign(mu.begin() + 1, mu.end());
  return out;
}

MomentSet cumulants_from_moments(std::span<const double> moments) {
  const std::size_t k = moments.size();
  MomentSet out;
  if (k == 0) return out;
  out.moments.assign(moments.begin(), moments.end());
  std::vector<double> mu(k + 1, 1.0);
  for (std::size_t n = 1; n <= k; ++n) mu[n] = moments[n - 1];
  std::vector<double> kappa(k + 1, 0.0);
  for (std::size_t n = 1; n <= k; ++n) {
    double acc = mu[n];
    for (std::size_t j = 1; j < n; ++j)
      acc -= static_cast<double>(binomial(static_cast<int>(n - 1), static_cast<int>(j - 1))) *
             kappa[j] * mu[n - j];
    kappa[n] = acc;
  }
  out.cumulants.assign(kappa.begin() + 1, kappa.end());
  return out;
}

}  // namespace qfluct
