#pragma once

// Portable random streams. Every chunk of samples owns its own
// std::mt19937_64, seeded from (seed, chunk index) through SplitMix64, so
// the sample stream does not depend on how chunks are scheduled.

#include <cstdint>
#include <random>

namespace qfluct::rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of chunk `chunk` for a run started with `seed`.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept;

/// Standard normal deviates by the Box-Muller transform. Both outputs of a
/// pair are used.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

  double next();

 private:
  double uniform_open();  // in (0, 1]

  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qfluct::rng
