#pragma once

#include <numbers>

namespace etpa {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, vacuum
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kAvogadro = 6.02214076e23;  // 1/mol (exact, SI 2019)

}  // namespace etpa
