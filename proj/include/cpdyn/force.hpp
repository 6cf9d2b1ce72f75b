#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cpdyn/scenario.hpp"

namespace cpdyn {

/// The closed forms diverge on the light cone a = 1; points inside the
/// exclusion window are refused with this error instead of returning ±inf.
class light_cone_error : public std::domain_error {
public:
    light_cone_error(double x0, double a);
    double x0() const { return x0_; }
    double a() const { return a_; }
private:
    double x0_, a_;
};

/// Dimensionless static force Phi_stat(x0) = F_stat d^4 / mu^2:
///   [ 4 x0 - 3 (x0^2-2) (f(x0) - pi cos x0) - x0 (x0^2-6) (g(x0) - pi sin x0) ] / (12 pi)
/// Attractive (-1/4) at short distance, oscillatory at large x0 with zeros
/// asymptotically pi apart.
double static_force(double x0);

/// d Phi_stat / d x0 = [ x0^2 - 2 - x0^3 (f(x0) - pi cos x0) ] / (12 pi).
double static_force_derivative(double x0);

/// The dynamical force splits into an elementary part (rational in a times
/// sin/cos of a*x0) and a Si/Ci bracket; each sub-expression is exposed for
/// term-level validation against the quadrature oracle.
struct DynTerms {
    double sin_pole1;    //  a x0^2 sin(a x0) / (12 pi (a^2-1))
    double sin_pole3;    // -a (3a^4-8a^2+9) sin(a x0) / (6 pi (a^2-1)^3)
    double cos_pole2;    //  x0 (a^2-2) cos(a x0) / (6 pi (a^2-1)^2)
    double bracket_ci;   //  P(x0) [Ci(x0|1-a|) + Ci(x0(1+a))] / (12 pi)
    double bracket_si;   //  Q(x0) [pi·(a<1) + Si(x0(1+a)) + Si(x0(1-a))] / (12 pi)
    double total() const {
        return sin_pole1 + sin_pole3 + cos_pole2 + bracket_ci + bracket_si;
    }
};

/// Trig-polynomial coefficients of the Si/Ci bracket.
double bracket_coeff_p(double x0);  // [x0 (6-x0^2) cos x0 + 3 (x0^2-2) sin x0] / 2
double bracket_coeff_q(double x0);  // [3 (2-x0^2) cos x0 + x0 (6-x0^2) sin x0] / 2

DynTerms dynamical_force_terms(double x0, double a);

/// Dimensionless dynamical force Phi_dyn(x0, a).  Throws light_cone_error
/// when |a-1| < exclusion_half_width; std::domain_error for x0 <= 0 or a < 0.
double dynamical_force(double x0, double a,
                       double exclusion_half_width = kDefaultExclusion);

/// Alternate transcriptions of the ambiguous printed terms, used by the
/// oracle check to document which reading survives the numerical
/// adjudication (and by tests as fault-injection hooks).
enum class DynVariant {
    Adopted,                  // the derived reading (what dynamical_force uses)
    PlusDenominatorLeading,   // a<1 leading sin term over (1+a^2)^3 instead of (a^2-1)^3
    BracketTimesSix,          // a>1 Si/Ci bracket scaled by 6 (1/(2pi) instead of 1/(12pi))
    AltElementaryAfter,       // a>1 elementary part with sin-polynomial 2a^4-5a^2+5
    DropPiBefore,             // a<1 bracket without the constant pi term
};

const char* dyn_variant_name(DynVariant v);

double dynamical_force_variant(double x0, double a, DynVariant v,
                               double exclusion_half_width = kDefaultExclusion);

/// Assembled result.  phi_dyn/phi_total are empty exactly when regime is
/// LightCone; phi_total = phi_static + phi_dyn in one rounding path.
struct ForceResult {
    double phi_static;
    std::optional<double> phi_dyn;
    std::optional<double> phi_total;
    Regime regime;
    std::optional<double> physical_value;  // phi_total * force scale
};

/// Throws light_cone_error inside the exclusion window (propagating policy).
ForceResult total_force(double x0, double a,
                        double exclusion_half_width = kDefaultExclusion);
ForceResult total_force(const Scenario& s, double t,
                        double exclusion_half_width = kDefaultExclusion);

/// Non-throwing variant for scan loops: light-cone points come back flagged
/// with empty phi_dyn/phi_total instead of raising.
ForceResult evaluate_force(double x0, double a,
                           double exclusion_half_width = kDefaultExclusion);
ForceResult evaluate_force(const Scenario& s, double t,
                           double exclusion_half_width = kDefaultExclusion);

/// All zeros of Phi_stat in [x0_min, x0_max], bisected to 1e-10.
std::vector<double> static_force_zeros(double x0_min, double x0_max);

/// Extrema of the physical static-force profile F_stat(d) ~ Phi_stat(x0)/x0^4
/// at fixed k0 (the spatial oscillation the distance scan reports).
struct ForceExtremum {
    double x0;
    double phi_stat;
    bool is_maximum;
};
std::vector<ForceExtremum> static_force_extrema(double x0_min, double x0_max);

/// Result of a dimensionless energy-shift evaluation (units mu^2/d^3).
struct EnergyShiftResult {
    enum class Method { ClosedFormStatic, RegularizedQuadrature };
    double value;
    Method method;
    double estimated_error;
};

}  // namespace cpdyn
