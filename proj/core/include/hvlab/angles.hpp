#pragma once

#include <cmath>
#include <numbers>

namespace hvlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = kPi / 2.0;

// Polarization angles are directions, not orientations: all angle arithmetic
// reduces mod pi into [0, pi).
inline double wrap_pi(double angle) {
    double r = std::fmod(angle, kPi);
    if (r < 0.0) r += kPi;
    if (r >= kPi) r -= kPi;  // fmod rounding at the seam
    return r;
}

/// Distance between two directions on the mod-pi circle, in [0, pi/2].
inline double direction_distance(double a, double b) {
    double w = wrap_pi(a - b);
    return std::min(w, kPi - w);
}

}  // namespace hvlab
