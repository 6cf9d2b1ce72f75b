#include "cpdyn/specfun.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cpdyn/constants.hpp"

namespace cpdyn {
namespace {

constexpr double kSeriesLimit = 4.0;

// Maclaurin series, |x| <= kSeriesLimit.
double si_series(double x) {
    const double x2 = x*x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 40; ++n) {
        term *= -x2*(2*n - 1)/((2.0*n)*(2*n + 1)*(2*n + 1));
        sum += term;
        if (std::fabs(term) < 1e-18*std::fabs(sum)) break;
    }
    return sum;
}

// Cin(x) = int_0^x (1-cos u)/u du;  Ci = gamma + ln x - Cin.
double cin_series(double x) {
    const double x2 = x*x;
    double term = x2/4.0;
    double sum = term;
    for (int n = 2; n < 40; ++n) {
        term *= -x2*(2*n - 2)/((2.0*n)*(2*n)*(2*n - 1));
        sum += term;
        if (std::fabs(term) < 1e-18*std::fabs(sum)) break;
    }
    return sum;
}

// f(x) + i g(x) = i * 1/((ix+1) - 1^2/((ix+3) - 2^2/((ix+5) - ...)))
// (modified Lentz on the continued fraction of the exponential integral,
// rotated to the imaginary axis).  Valid and fast for x > ~2.
std::complex<double> fg_continued_fraction(double x) {
    const std::complex<double> z(0.0, x);
    const double tiny = 1e-290;
    std::complex<double> b = z + 1.0;
    std::complex<double> c = 1.0/tiny;
    std::complex<double> d = 1.0/b;
    std::complex<double> h = d;
    for (int j = 1; j < 300; ++j) {
        const double a = -static_cast<double>(j)*j;
        b += 2.0;
        d = 1.0/(a*d + b);
        c = b + a/c;
        const std::complex<double> delta = c*d;
        h *= delta;
        if (std::fabs(delta.real() - 1.0) + std::fabs(delta.imag()) < 1e-16) break;
    }
    return std::complex<double>(0.0, 1.0)*h;
}

void require_finite(double x) {
    if (!std::isfinite(x)) throw std::domain_error("specfun: non-finite argument");
}

}  // namespace

double sin_integral(double x) {
    require_finite(x);
    const double ax = std::fabs(x);
    double v;
    if (ax <= kSeriesLimit) {
        v = si_series(ax);
    } else {
        const std::complex<double> fg = fg_continued_fraction(ax);
        v = kPi/2 - fg.real()*std::cos(ax) - fg.imag()*std::sin(ax);
    }
    return x < 0 ? -v : v;
}

double cos_integral(double x) {
    require_finite(x);
    if (x <= 0.0) throw std::domain_error("cos_integral: requires x > 0");
    if (x <= kSeriesLimit)
        return kEulerGamma + std::log(x) - cin_series(x);
    const std::complex<double> fg = fg_continued_fraction(x);
    return fg.real()*std::sin(x) - fg.imag()*std::cos(x);
}

AuxPair aux_fg(double z) {
    require_finite(z);
    if (z <= 0.0) throw std::domain_error("aux_fg: requires z > 0");
    if (z > kSeriesLimit) {
        const std::complex<double> fg = fg_continued_fraction(z);
        return AuxPair{fg.real(), fg.imag(), z};
    }
    const double si = si_series(z);
    const double ci = kEulerGamma + std::log(z) - cin_series(z);
    const double s = std::sin(z), c = std::cos(z);
    return AuxPair{ci*s - (si - kPi/2)*c, -ci*c - (si - kPi/2)*s, z};
}

}  // namespace cpdyn
