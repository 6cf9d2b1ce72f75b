#pragma once

namespace cpdyn {

inline constexpr double kPi = 3.14159265358979323846;

// Euler-Mascheroni constant, full double precision (Ci small-argument branch).
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Speed of light.
inline constexpr double kSpeedOfLightCgs = 2.99792458e10;   // cm/s
inline constexpr double kSpeedOfLightSi = 2.99792458e8;     // m/s

// 1 C·m in statC·cm:  (c_cgs/10) statC per C, times 100 cm per m.
inline constexpr double kDipoleSiToGaussian = 2.99792458e11;

// 4*pi*epsilon_0 in SI (C^2 / (N m^2)).
inline constexpr double kFourPiEpsilon0 = 1.11265005605362e-10;

inline constexpr double kDynePerNewton = 1.0e5;

}  // namespace cpdyn
