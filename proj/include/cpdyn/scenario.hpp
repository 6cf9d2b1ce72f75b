#pragma once

#include <optional>
#include <string>

namespace cpdyn {

enum class UnitSystem { Gaussian, SI, Natural };

/// One atom-wall configuration.  Gaussian cgs is the internal physical layer
/// (statC·cm, cm^-1, cm); SI values are converted at the boundary.  Natural
/// means c = 1 with all quantities in one consistent arbitrary unit.
struct Scenario {
    double dipole_moment;          // statC·cm (Gaussian/SI) or raw (Natural)
    double transition_wavenumber;  // k0, cm^-1 or raw;  omega0 = c k0
    double distance;               // d, cm or raw
    UnitSystem unit_system;

    // as-given SI values, kept for reporting when unit_system == SI
    std::optional<double> dipole_si;    // C·m
    std::optional<double> distance_si;  // m

    double speed_of_light() const;

    /// Throws std::invalid_argument unless all parameters are positive finite.
    void validate() const;
};

Scenario make_gaussian_scenario(double mu_statC_cm, double k0_inv_cm, double d_cm);
Scenario make_si_scenario(double mu_C_m, double k0_inv_m, double d_m);
Scenario make_natural_scenario(double mu, double k0, double d);

enum class Regime { BeforeRoundTrip, AfterRoundTrip, LightCone };

const char* regime_name(Regime r);

/// Dimensionless coordinates: the whole force family is two-parameter.
struct ReducedPoint {
    double x0;      // 2 k0 d
    double a;       // c t / (2 d)
    Regime regime;
};

/// Default |a-1| half-width below which the closed forms are not evaluated.
inline constexpr double kDefaultExclusion = 1e-6;

/// Reduce (scenario, t) to (x0, a) and classify the temporal regime against
/// the exclusion half-width.  t < 0 is a domain error.
ReducedPoint reduce(const Scenario& s, double t,
                    double exclusion_half_width = kDefaultExclusion);

/// 2d/c: time for a light signal from the atom to return after reflection.
double roundtrip_time(const Scenario& s);

/// Multiplicative scale turning the dimensionless force Phi into a physical
/// force:  F = Phi * scale.
struct ForceScale {
    double gaussian_scale;            // mu^2/d^4 (dyn), or raw for Natural
    std::optional<double> si_scale;   // mu^2/(4 pi eps0 d^4) (N), SI only
    double value() const;             // scale in the scenario's unit system
};

ForceScale force_scale(const Scenario& s);

/// Parse a scenario JSON document:
///   { "dipole_moment": ..., "dipole_unit": "C·m"|"statC·cm",
///     "wavelength": ... XOR "wavenumber": ...,
///     "distance": ..., "distance_unit": "m"|"cm"|"nm"|"um",
///     "unit_system": "Gaussian"|"SI"|"natural" }
/// Documents specifying both wavelength and wavenumber are rejected.
/// Throws std::invalid_argument with a specific message on any violation.
Scenario scenario_from_json_text(const std::string& text);
Scenario scenario_from_json_file(const std::string& path);

/// Compact single-line JSON used in CSV header blocks and reports.
std::string scenario_to_json(const Scenario& s);

}  // namespace cpdyn
