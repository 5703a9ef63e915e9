#pragma once

#include <numbers>

namespace modecatch::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Config files and CSV headers quote rates in the 2*pi*frequency convention;
// everything internal is rad/s and seconds.
inline constexpr double rad_per_s_from_two_pi_khz(double v) { return v * two_pi * 1e3; }
inline constexpr double rad_per_s_from_two_pi_mhz(double v) { return v * two_pi * 1e6; }
inline constexpr double rad_per_s_from_two_pi_ghz(double v) { return v * two_pi * 1e9; }
inline constexpr double rad_per_s_from_two_pi_thz(double v) { return v * two_pi * 1e12; }

inline constexpr double two_pi_mhz_from_rad_per_s(double w) { return w / (two_pi * 1e6); }

inline constexpr double seconds_from_ns(double t_ns) { return t_ns * 1e-9; }
inline constexpr double ns_from_seconds(double t) { return t * 1e9; }

}  // namespace modecatch::units
