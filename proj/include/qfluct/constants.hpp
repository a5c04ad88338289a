#pragma once

#include <numbers>

namespace qfluct {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

inline constexpr long double kPiL = std::numbers::pi_v<long double>;

}  // namespace qfluct
