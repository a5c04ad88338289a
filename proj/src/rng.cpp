#include "qfluct/rng.hpp"

#include <cmath>

#include "qfluct/constants.hpp"

namespace qfluct::rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept {
  return splitmix64(splitmix64(seed) ^ (chunk * 0xd1b54a32d192ed03ULL + 1));
}

double NormalStream::uniform_open() {
  // 53 random bits mapped to (0, 1], so the logarithm is always finite.
  return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = kTwoPi * uniform_open();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace qfluct::rng
