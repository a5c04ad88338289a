#pragma once

// Wick-contraction combinatorics: perfect matchings of 2n field legs,
// matchings of n two-leg vertices with no self-contraction, and their
// classification into cycles.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qfluct {

/// n disjoint unordered pairs of legs 0..2n-1, each stored (low, high) and
/// sorted by the low leg.
struct Pairing {
  std::vector<std::pair<int, int>> pairs;
  friend bool operator==(const Pairing&, const Pairing&) = default;
};

/// A pairing of the legs of n two-leg vertices; vertex v owns legs 2v and
/// 2v+1, and no pair joins the two legs of one vertex.
struct VertexMatching {
  std::vector<std::pair<int, int>> pairs;
  friend bool operator==(const VertexMatching&, const VertexMatching&) = default;
};

/// A cycle type of a vertex matching, aggregated over vertex labellings.
struct CyclePartition {
  std::vector<int> cycle_lengths;        // non-increasing, each >= 2
  std::uint64_t set_partitions = 0;      // labelled vertex partitions of this type
  std::uint64_t weight_per_partition = 0;  // prod 2^(l-1) (l-1)!
  std::uint64_t multiplicity = 0;        // set_partitions * weight_per_partition
};

/// Raw moments mu_1..mu_k and cumulants kappa_1..kappa_k of one distribution.
struct MomentSet {
  std::vector<double> moments;
  std::vector<double> cumulants;
};

inline constexpr int kMaxPairingOrder = 8;
inline constexpr int kMaxMatchingOrder = 6;
inline constexpr int kMaxCycleOrder = 12;

/// (2n-1)!!, with (-1)!! = 1.
std::uint64_t double_factorial_odd(int n);

/// All perfect matchings of 2n legs in canonical order: the lowest free
/// leg is paired first, with partners in increasing order. n <= 8.
std::vector<Pairing> enumerate_pairings(int n);

/// (2n-1)!! variance^n
double gaussian_moment(int n, double variance);

/// Zero-mean normal density with the given variance.
double gaussian_density(double x, double variance);

/// All self-contraction-free matchings of n two-leg vertices. n <= 6.
std::vector<VertexMatching> enumerate_vertex_matchings(int n);

/// sum_k (-1)^k C(n,k) (2n-2k-1)!!
std::uint64_t vertex_matching_count(int n);

/// 2^(l-1) (l-1)!: matchings that close l two-leg vertices into one cycle.
std::uint64_t cycle_weight(int length);

/// Cycle lengths of a vertex matching, sorted non-increasing.
std::vector<int> cycle_type(const VertexMatching& m, int n);

/// Every cycle type of n vertices with all cycles of length >= 2. n <= 12.
std::vector<CyclePartition> cycle_partitions(int n);

/// Raw moments from cumulants by mu_n = sum_k C(n-1,k-1) kappa_k mu_{n-k}.
MomentSet moments_from_cumulants(std::span<const double> kappas);

/// The inverse of moments_from_cumulants.
MomentSet cumulants_from_moments(std::span<const double> moments);

}  // namespace qfluct
