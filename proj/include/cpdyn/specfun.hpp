#pragma once

namespace cpdyn {

/// Sine integral Si(x) = int_0^x sin(u)/u du.  Odd in x; Si(x) -> pi/2 as
/// x -> +inf.  Throws std::domain_error for non-finite x.
double sin_integral(double x);

/// Cosine integral Ci(x) = gamma + ln x + int_0^x (cos u - 1)/u du, x > 0.
/// Ci -> 0 at infinity, Ci -> -inf logarithmically at 0+.
/// Throws std::domain_error for x <= 0 or non-finite x.
double cos_integral(double x);

/// Auxiliary pair
///   f(z) =  Ci(z) sin(z) - (Si(z) - pi/2) cos(z)
///   g(z) = -Ci(z) cos(z) - (Si(z) - pi/2) sin(z)
/// with large-z decay f ~ 1/z, g ~ 1/z^2.
struct AuxPair {
    double f_val;
    double g_val;
    double at;
};

/// Cancellation-safe evaluation of (f, g) at z > 0.  For z above the series
/// range the pair is computed directly from a continued fraction, so the
/// subtraction of large oscillating Si/Ci terms never happens.
AuxPair aux_fg(double z);

}  // namespace cpdyn
