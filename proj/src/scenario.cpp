#include "cpdyn/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cpdyn/constants.hpp"

namespace cpdyn {

double Scenario::speed_of_light() const {
    return unit_system == UnitSystem::Natural ? 1.0 : kSpeedOfLightCgs;
}

void Scenario::validate() const {
    const bool ok = std::isfinite(dipole_moment) && dipole_moment > 0 &&
                    std::isfinite(transition_wavenumber) && transition_wavenumber > 0 &&
                    std::isfinite(distance) && distance > 0;
    if (!ok)
        throw std::invalid_argument(
            "Scenario: dipole_moment, transition_wavenumber and distance must be positive");
}

Scenario make_gaussian_scenario(double mu, double k0, double d) {
    Scenario s{mu, k0, d, UnitSystem::Gaussian, std::nullopt, std::nullopt};
    s.validate();
    return s;
}

Scenario make_si_scenario(double mu_C_m, double k0_inv_m, double d_m) {
    Scenario s{mu_C_m*kDipoleSiToGaussian, k0_inv_m/100.0, d_m*100.0,
               UnitSystem::SI, mu_C_m, d_m};
    s.validate();
    return s;
}

Scenario make_natural_scenario(double mu, double k0, double d) {
    Scenario s{mu, k0, d, UnitSystem::Natural, std::nullopt, std::nullopt};
    s.validate();
    return s;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::BeforeRoundTrip: return "BeforeRoundTrip";
        case Regime::AfterRoundTrip: return "AfterRoundTrip";
        case Regime::LightCone: return "LightCone";
    }
    return "?";
}

ReducedPoint reduce(const Scenario& s, double t, double exclusion_half_width) {
    s.validate();
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::domain_error("reduce: time must be finite and >= 0");
    const double x0 = 2.0*s.transition_wavenumber*s.distance;
    const double a = s.speed_of_light()*t/(2.0*s.distance);
    Regime regime;
    if (std::fabs(a - 1.0) < exclusion_half_width)
        regime = Regime::LightCone;
    else if (a < 1.0)
        regime = Regime::BeforeRoundTrip;
    else
        regime = Regime::AfterRoundTrip;
    return ReducedPoint{x0, a, regime};
}

double roundtrip_time(const Scenario& s) {
    s.validate();
    return 2.0*s.distance/s.speed_of_light();
}

double ForceScale::value() const {
    return si_scale ? *si_scale : gaussian_scale;
}

ForceScale force_scale(const Scenario& s) {
    s.validate();
    ForceScale fs{};
    fs.gaussian_scale = s.dipole_moment*s.dipole_moment/
                        (s.distance*s.distance*s.distance*s.distance);
    if (s.unit_system == UnitSystem::SI) {
        const double mu = *s.dipole_si;
        const double d = *s.distance_si;
        fs.si_scale = mu*mu/(kFourPiEpsilon0*d*d*d*d);
    }
    return fs;
}

namespace {

double length_to_cm(double v, const std::string& unit) {
    if (unit == "m") return v*100.0;
    if (unit == "cm") return v;
    if (unit == "mm") return v*0.1;
    if (unit == "um") return v*1e-4;
    if (unit == "nm") return v*1e-7;
    if (unit == "angstrom" || unit == "A") return v*1e-8;
    throw std::invalid_argument("scenario: unknown length unit '" + unit + "'");
}

bool is_si_dipole_unit(const std::string& u) {
    return u == "C·m" || u == "C.m" || u == "Cm";
}

bool is_gaussian_dipole_unit(const std::string& u) {
    return u == "statC·cm" || u == "statC.cm" || u == "statCcm";
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!j.contains("unit_system"))
        throw std::invalid_argument("scenario: missing unit_system");
    const std::string us = j["unit_system"].get<std::string>();

    const bool has_wl = j.contains("wavelength");
    const bool has_wn = j.contains("wavenumber");
    if (has_wl == has_wn)
        throw std::invalid_argument(
            "scenario: exactly one of wavelength or wavenumber is required");
    if (!j.contains("dipole_moment") || !j.contains("distance"))
        throw std::invalid_argument("scenario: missing dipole_moment or distance");

    const double mu_raw = j["dipole_moment"].get<double>();
    const double dist_raw = j["distance"].get<double>();

    if (us == "natural" || us == "Natural") {
        const double k0 = has_wn ? j["wavenumber"].get<double>()
                                 : 2.0*kPi/j["wavelength"].get<double>();
        return make_natural_scenario(mu_raw, k0, dist_raw);
    }

    const std::string dist_unit = j.value("distance_unit", us == "SI" ? "m" : "cm");
    const double d_cm = length_to_cm(dist_raw, dist_unit);
    double k0_cm;
    if (has_wn) {
        // wavenumber carries inverse distance_unit
        k0_cm = j["wavenumber"].get<double>()/length_to_cm(1.0, dist_unit);
    } else {
        k0_cm = 2.0*kPi/length_to_cm(j["wavelength"].get<double>(), dist_unit);
    }

    const std::string dip_unit = j.value("dipole_unit", us == "SI" ? "C·m" : "statC·cm");
    double mu_gauss;
    bool si_dipole;
    if (is_si_dipole_unit(dip_unit)) {
        mu_gauss = mu_raw*kDipoleSiToGaussian;
        si_dipole = true;
    } else if (is_gaussian_dipole_unit(dip_unit)) {
        mu_gauss = mu_raw;
        si_dipole = false;
    } else {
        throw std::invalid_argument("scenario: unknown dipole_unit '" + dip_unit + "'");
    }

    if (us == "SI") {
        Scenario s{mu_gauss, k0_cm, d_cm, UnitSystem::SI,
                   si_dipole ? mu_raw : mu_gauss/kDipoleSiToGaussian,
                   d_cm/100.0};
        s.validate();
        return s;
    }
    if (us == "Gaussian")
        return make_gaussian_scenario(mu_gauss, k0_cm, d_cm);
    throw std::invalid_argument("scenario: unknown unit_system '" + us + "'");
}

Scenario scenario_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("scenario: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json_text(ss.str());
}

std::string scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    switch (s.unit_system) {
        case UnitSystem::Natural:
            j["unit_system"] = "natural";
            j["dipole_moment"] = s.dipole_moment;
            j["wavenumber"] = s.transition_wavenumber;
            j["distance"] = s.distance;
            break;
        case UnitSystem::Gaussian:
            j["unit_system"] = "Gaussian";
            j["dipole_moment"] = s.dipole_moment;
            j["dipole_unit"] = "statC·cm";
            j["wavenumber"] = s.transition_wavenumber;
            j["distance"] = s.distance;
            j["distance_unit"] = "cm";
            break;
        case UnitSystem::SI:
            j["unit_system"] = "SI";
            j["dipole_moment"] = *s.dipole_si;
            j["dipole_unit"] = "C·m";
            j["wavenumber"] = s.transition_wavenumber*100.0;
            j["distance"] = *s.distance_si;
            j["distance_unit"] = "m";
            break;
    }
    return j.dump();
}

}  // namespace cpdyn
