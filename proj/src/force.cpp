#include "cpdyn/force.hpp"

#include <cmath>
#include <sstream>

#include "cpdyn/constants.hpp"
#include "cpdyn/specfun.hpp"

namespace cpdyn {
namespace {

void require_x0(double x0) {
    if (!(x0 > 0.0) || !std::isfinite(x0))
        throw std::domain_error("force: requires x0 > 0");
}

void require_a(double a) {
    if (!(a >= 0.0) || !std::isfinite(a))
        throw std::domain_error("force: requires a >= 0");
}

}  // namespace

light_cone_error::light_cone_error(double x0, double a)
    : std::domain_error([&] {
          std::ostringstream os;
          os << "dynamical force unavailable at the light cone (x0=" << x0
             << ", a=" << a << "); shrink the exclusion window to evaluate closer";
          return os.str();
      }()),
      x0_(x0), a_(a) {}

double static_force(double x0) {
    require_x0(x0);
    const AuxPair fg = aux_fg(x0);
    const double F = fg.f_val - kPi*std::cos(x0);
    const double G = fg.g_val - kPi*std::sin(x0);
    return (4.0*x0 - 3.0*(x0*x0 - 2.0)*F - x0*(x0*x0 - 6.0)*G)/(12.0*kPi);
}

double static_force_derivative(double x0) {
    require_x0(x0);
    const AuxPair fg = aux_fg(x0);
    const double F = fg.f_val - kPi*std::cos(x0);
    return (x0*x0 - 2.0 - x0*x0*x0*F)/(12.0*kPi);
}

double bracket_coeff_p(double x0) {
    return 0.5*(x0*(6.0 - x0*x0)*std::cos(x0) + 3.0*(x0*x0 - 2.0)*std::sin(x0));
}

double bracket_coeff_q(double x0) {
    return 0.5*(3.0*(2.0 - x0*x0)*std::cos(x0) + x0*(6.0 - x0*x0)*std::sin(x0));
}

DynTerms dynamical_force_terms(double x0, double a) {
    require_x0(x0);
    require_a(a);
    const double s = std::sin(a*x0);
    const double c = std::cos(a*x0);
    const double am = a*a - 1.0;
    DynTerms t{};
    t.sin_pole1 = a*x0*x0*s/(12.0*kPi*am);
    t.sin_pole3 = -a*(3.0*a*a*a*a - 8.0*a*a + 9.0)*s/(6.0*kPi*am*am*am);
    t.cos_pole2 = x0*(a*a - 2.0)*c/(6.0*kPi*am*am);
    const double P = bracket_coeff_p(x0);
    const double Q = bracket_coeff_q(x0);
    t.bracket_ci = P*(cos_integral(x0*std::fabs(1.0 - a)) + cos_integral(x0*(1.0 + a)))
                   /(12.0*kPi);
    // Si is odd, so sin_integral(x0 (1-a)) covers both temporal regimes; the
    // constant pi appears only before the round trip (pole not yet crossed).
    const double pi_term = a < 1.0 ? kPi : 0.0;
    t.bracket_si = Q*(pi_term + sin_integral(x0*(1.0 + a)) + sin_integral(x0*(1.0 - a)))
                   /(12.0*kPi);
    return t;
}

double dynamical_force(double x0, double a, double exclusion_half_width) {
    require_x0(x0);
    require_a(a);
    if (std::fabs(a - 1.0) < exclusion_half_width) throw light_cone_error(x0, a);
    return dynamical_force_terms(x0, a).total();
}

const char* dyn_variant_name(DynVariant v) {
    switch (v) {
        case DynVariant::Adopted: return "adopted";
        case DynVariant::PlusDenominatorLeading: return "plus_denominator_leading_term";
        case DynVariant::BracketTimesSix: return "bracket_times_six";
        case DynVariant::AltElementaryAfter: return "alt_elementary_after_roundtrip";
        case DynVariant::DropPiBefore: return "drop_pi_before_roundtrip";
    }
    return "?";
}

double dynamical_force_variant(double x0, double a, DynVariant v,
                               double exclusion_half_width) {
    require_x0(x0);
    require_a(a);
    if (std::fabs(a - 1.0) < exclusion_half_width) throw light_cone_error(x0, a);
    const DynTerms t = dynamical_force_terms(x0, a);
    const double s = std::sin(a*x0);
    const double c = std::cos(a*x0);
    const double om = 1.0 - a*a;
    switch (v) {
        case DynVariant::Adopted:
            return t.total();
        case DynVariant::PlusDenominatorLeading: {
            if (a >= 1.0) return t.total();
            const double den = (1.0 + a*a)*(1.0 + a*a)*(1.0 + a*a);
            const double lead = a*s*((9.0 - 8.0*a*a + 3.0*a*a*a*a) - 0.5*x0*x0*om*om)
                                /(6.0*kPi*den);
            return lead + x0*(a*a - 2.0)*c/(6.0*kPi*om*om) + t.bracket_ci + t.bracket_si;
        }
        case DynVariant::BracketTimesSix:
            if (a <= 1.0) return t.total();
            return t.sin_pole1 + t.sin_pole3 + t.cos_pole2
                   + 6.0*(t.bracket_ci + t.bracket_si);
        case DynVariant::AltElementaryAfter: {
            if (a <= 1.0) return t.total();
            const double t1 = (-x0*c + a*(1.0 - 0.5*x0*x0)*s)/(6.0*kPi*om);
            const double t2 = -x0*c/(6.0*kPi*om*om);
            const double t3 = a*(4.0 - 3.0*a*a + a*a*a*a)*s/(6.0*kPi*om*om*om);
            return t1 + t2 + t3 + t.bracket_ci + t.bracket_si;
        }
        case DynVariant::DropPiBefore:
            if (a >= 1.0) return t.total();
            return t.sin_pole1 + t.sin_pole3 + t.cos_pole2 + t.bracket_ci
                   + (t.bracket_si - bracket_coeff_q(x0)/12.0);
    }
    return t.total();
}

namespace {

ForceResult assemble(double x0, double a, double excl, bool throwing) {
    const double ps = static_force(x0);
    ForceResult r{};
    r.phi_static = ps;
    if (std::fabs(a - 1.0) < excl) {
        if (throwing) throw light_cone_error(x0, a);
        r.regime = Regime::LightCone;
        return r;
    }
    r.regime = a < 1.0 ? Regime::BeforeRoundTrip : Regime::AfterRoundTrip;
    const double pd = dynamical_force_terms(x0, a).total();
    r.phi_dyn = pd;
    r.phi_total = ps + pd;
    return r;
}

}  // namespace

ForceResult total_force(double x0, double a, double exclusion_half_width) {
    require_x0(x0);
    require_a(a);
    return assemble(x0, a, exclusion_half_width, /*throwing=*/true);
}

ForceResult total_force(const Scenario& s, double t, double exclusion_half_width) {
    const ReducedPoint rp = reduce(s, t, exclusion_half_width);
    ForceResult r = total_force(rp.x0, rp.a, exclusion_half_width);
    if (r.phi_total) r.physical_value = *r.phi_total*force_scale(s).value();
    return r;
}

ForceResult evaluate_force(double x0, double a, double exclusion_half_width) {
    require_x0(x0);
    require_a(a);
    return assemble(x0, a, exclusion_half_width, /*throwing=*/false);
}

ForceResult evaluate_force(const Scenario& s, double t, double exclusion_half_width) {
    const ReducedPoint rp = reduce(s, t, exclusion_half_width);
    ForceResult r = evaluate_force(rp.x0, rp.a, exclusion_half_width);
    if (r.phi_total) r.physical_value = *r.phi_total*force_scale(s).value();
    return r;
}

namespace {

// Bisect a bracketed sign change of fn down to xtol.
template <typename F>
double bisect(const F& fn, double lo, double hi, double flo, double xtol) {
    for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
        const double mid = 0.5*(lo + hi);
        const double fm = fn(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5*(lo + hi);
}

}  // namespace

std::vector<double> static_force_zeros(double x0_min, double x0_max) {
    if (!(x0_min > 0.0) || !(x0_max > x0_min))
        throw std::domain_error("static_force_zeros: requires 0 < x0_min < x0_max");
    // The closest zero spacing approaches pi; an eighth of that cannot skip roots.
    const double step = kPi/8.0;
    std::vector<double> roots;
    double x = x0_min;
    double fx = static_force(x);
    while (x < x0_max) {
        const double xn = std::min(x + step, x0_max);
        const double fn_ = static_force(xn);
        if ((fx < 0) != (fn_ < 0))
            roots.push_back(bisect(static_force, x, xn, fx, 1e-10));
        x = xn;
        fx = fn_;
        if (xn >= x0_max) break;
    }
    return roots;
}

std::vector<ForceExtremum> static_force_extrema(double x0_min, double x0_max) {
    if (!(x0_min > 0.0) || !(x0_max > x0_min))
        throw std::domain_error("static_force_extrema: requires 0 < x0_min < x0_max");
    // d/dx0 [Phi/x0^4] = 0  <=>  x0 Phi' - 4 Phi = 0
    auto profile_slope = [](double x0) {
        return x0*static_force_derivative(x0) - 4.0*static_force(x0);
    };
    const double step = kPi/8.0;
    std::vector<ForceExtremum> out;
    double x = x0_min;
    double fx = profile_slope(x);
    while (x < x0_max) {
        const double xn = std::min(x + step, x0_max);
        const double fn_ = profile_slope(xn);
        if ((fx < 0) != (fn_ < 0)) {
            const double r = bisect(profile_slope, x, xn, fx, 1e-10);
            out.push_back(ForceExtremum{r, static_force(r), fx > 0.0});
        }
        x = xn;
        fx = fn_;
        if (xn >= x0_max) break;
    }
    return out;
}

}  // namespace cpdyn
