#include "cpdyn/scan.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "cpdyn/constants.hpp"
#include "cpdyn/force.hpp"
#include "parallel.hpp"

#ifndef CPDYN_VERSION
#define CPDYN_VERSION "unknown"
#endif

namespace cpdyn {
namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Physical exclusion near the cone that the closed forms cannot be trusted
// inside, as a time half-width for SI scenarios.
constexpr double kSiExclusionSeconds = 7e-17;

// Second-order treatment assumes times well below the excited-state decay
// time; warn past this in SI mode.
constexpr double kSiPerturbativeCeiling = 1e-8;

double effective_exclusion(const Scenario& s, double requested) {
    double w = requested;
    if (s.unit_system == UnitSystem::SI) {
        // half-width in a-units of the 7e-17 s reliability bound
        const double wa = s.speed_of_light()*kSiExclusionSeconds/(2.0*s.distance);
        w = std::max(w, wa);
    }
    return w;
}

double physical_force(const Scenario& s, double phi_total, const std::string& unit) {
    const ForceScale fs = force_scale(s);
    if (unit == "dyn") return phi_total*fs.gaussian_scale;
    if (unit == "N") {
        if (fs.si_scale) return phi_total*(*fs.si_scale);
        return phi_total*fs.gaussian_scale/kDynePerNewton;
    }
    return phi_total*fs.value();
}

struct Row {
    double abscissa;
    double x0;
    double a;
    Regime regime;
    double phi_static;
    bool have_dyn;
    double phi_dyn;
    double phi_total;
    double force_physical;
};

void write_header(std::ofstream& out, const char* kind, const Scenario& s,
                  const ScanSpec& spec, const std::vector<std::string>& warnings,
                  const char* columns) {
    out << "# cpdyn " << kind << " " << CPDYN_VERSION << "\n";
    out << "# scenario: " << scenario_to_json(s) << "\n";
    out << "# scan: min=" << fmt17(spec.min) << " max=" << fmt17(spec.max)
        << " samples=" << spec.samples
        << " exclusion=" << fmt17(spec.exclusion_window) << "\n";
    for (const auto& w : warnings) out << "# warning: " << w << "\n";
    out << columns << "\n";
}

void write_row(std::ofstream& out, const Row& r) {
    out << fmt17(r.abscissa) << ',' << fmt17(r.x0) << ',' << fmt17(r.a) << ','
        << regime_name(r.regime) << ',' << fmt17(r.phi_static) << ',';
    if (r.have_dyn)
        out << fmt17(r.phi_dyn) << ',' << fmt17(r.phi_total) << ','
            << fmt17(r.force_physical);
    else
        out << ",,";
    out << "\n";
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("scan: cannot write '" + path + "'");
    return out;
}

}  // namespace

void ScanSpec::validate() const {
    if (!(min < max))
        throw std::invalid_argument("scan: requires min < max");
    if (samples < 2)
        throw std::invalid_argument("scan: requires samples >= 2");
    if (!(exclusion_window > 0.0))
        throw std::invalid_argument("scan: exclusion window must be positive");
    if (output_path.empty())
        throw std::invalid_argument("scan: missing output path");
    if (force_unit != "auto" && force_unit != "dyn" && force_unit != "N")
        throw std::invalid_argument("scan: force_unit must be auto|dyn|N");
}

void run_time_scan(const Scenario& s, const ScanSpec& spec) {
    s.validate();
    spec.validate();
    if (spec.min < 0.0)
        throw std::invalid_argument("time scan: negative start time");
    const double excl = effective_exclusion(s, spec.exclusion_window);

    std::vector<std::string> warnings;
    if (s.unit_system == UnitSystem::SI && spec.max > kSiPerturbativeCeiling)
        warnings.push_back(
            "scan reaches beyond 1e-8 s; second-order results assume times "
            "shorter than the excited-state decay time");

    std::vector<Row> rows(spec.samples);
    detail::parallel_for(spec.samples, [&](long i) {
        const double t = spec.min + (spec.max - spec.min)*i/(spec.samples - 1);
        const ForceResult fr = evaluate_force(s, t, excl);
        const ReducedPoint rp = reduce(s, t, excl);
        Row r{};
        r.abscissa = t;
        r.x0 = rp.x0;
        r.a = rp.a;
        r.regime = fr.regime;
        r.phi_static = fr.phi_static;
        r.have_dyn = fr.phi_dyn.has_value();
        if (r.have_dyn) {
            r.phi_dyn = *fr.phi_dyn;
            r.phi_total = *fr.phi_total;
            r.force_physical = physical_force(s, r.phi_total, spec.force_unit);
        }
        rows[i] = r;
    });

    std::ofstream out = open_output(spec.output_path);
    write_header(out, "time-scan", s, spec, warnings,
                 "t,x0,a,regime,phi_static,phi_dyn,phi_total,force_physical");
    for (const Row& r : rows) write_row(out, r);
}

void run_distance_scan(const Scenario& scenario_template, const ScanSpec& spec,
                       double t_fixed) {
    scenario_template.validate();
    spec.validate();
    if (!(spec.min > 0.0))
        throw std::invalid_argument("distance scan: distances must be positive");
    if (!(t_fixed >= 0.0))
        throw std::invalid_argument("distance scan: negative time");

    std::vector<Row> rows(spec.samples);
    detail::parallel_for(spec.samples, [&](long i) {
        const double dist = spec.min + (spec.max - spec.min)*i/(spec.samples - 1);
        Scenario s = scenario_template;
        s.distance = s.unit_system == UnitSystem::SI ? dist*100.0 : dist;
        if (s.distance_si) s.distance_si = dist;
        const double excl = effective_exclusion(s, spec.exclusion_window);
        const ForceResult fr = evaluate_force(s, t_fixed, excl);
        const ReducedPoint rp = reduce(s, t_fixed, excl);
        Row r{};
        r.abscissa = dist;
        r.x0 = rp.x0;
        r.a = rp.a;
        r.regime = fr.regime;
        r.phi_static = fr.phi_static;
        r.have_dyn = fr.phi_dyn.has_value();
        if (r.have_dyn) {
            r.phi_dyn = *fr.phi_dyn;
            r.phi_total = *fr.phi_total;
            r.force_physical = physical_force(s, r.phi_total, spec.force_unit);
        }
        rows[i] = r;
    });

    std::vector<std::string> warnings;
    if (scenario_template.unit_system == UnitSystem::SI &&
        t_fixed > kSiPerturbativeCeiling)
        warnings.push_back(
            "t beyond 1e-8 s; second-order results assume times shorter than "
            "the excited-state decay time");

    std::ofstream out = open_output(spec.output_path);
    write_header(out, "distance-scan", scenario_template, spec, warnings,
                 "d,x0,a,regime,phi_static,phi_dyn,phi_total,force_physical");
    for (const Row& r : rows) write_row(out, r);

    // companion roots section: zeros of the static force inside the range
    const double k0 = scenario_template.transition_wavenumber;
    const double k0_scan = scenario_template.unit_system == UnitSystem::SI
                               ? k0*100.0   // cm^-1 -> m^-1 to match row units
                               : k0;
    const double x0_lo = 2.0*k0_scan*spec.min;
    const double x0_hi = 2.0*k0_scan*spec.max;
    out << "# roots: static-force zeros in range (columns x0, d)\n";
    for (double r : static_force_zeros(x0_lo, x0_hi))
        out << "# root: " << fmt17(r) << ' ' << fmt17(r/(2.0*k0_scan)) << "\n";
}

namespace {

Preset make_preset(const char* name, const char* desc, nlohmann::json scans) {
    nlohmann::json j{{"name", name}, {"description", desc}, {"scans", scans}};
    return Preset{name, desc, j.dump(2)};
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list = [] {
        std::vector<Preset> v;
        const nlohmann::json nat1{{"unit_system", "natural"}, {"dipole_moment", 1.0},
                                  {"wavenumber", 1.0}, {"distance", 20.0}};
        nlohmann::json nat2 = nat1;
        nat2["wavenumber"] = 2.0;
        v.push_back(make_preset(
            "fig1", "force before the round-trip time, d=20, c=1, k0 in {1,2}",
            nlohmann::json::array(
                {{{"scenario", nat1}, {"variable", "time"}, {"min", 0.0},
                  {"max", 40.0}, {"samples", 801}, {"output", "fig1_k0_1.csv"}},
                 {{"scenario", nat2}, {"variable", "time"}, {"min", 0.0},
                  {"max", 40.0}, {"samples", 801}, {"output", "fig1_k0_2.csv"}}})));
        v.push_back(make_preset(
            "fig2", "relaxation toward the stationary force after the round trip",
            nlohmann::json::array(
                {{{"scenario", nat1}, {"variable", "time"}, {"min", 40.0},
                  {"max", 200.0}, {"samples", 801}, {"output", "fig2_k0_1.csv"}}})));
        const nlohmann::json si{{"unit_system", "SI"},
                                {"dipole_moment", 6.31e-30},
                                {"dipole_unit", "C·m"},
                                {"wavelength", 1.215e-7},
                                {"distance", 7.03e-8},
                                {"distance_unit", "m"}};
        v.push_back(make_preset(
            "fig3-excited",
            "hydrogen-like scenario near the first static-force maximum",
            nlohmann::json::array(
                {{{"scenario", si}, {"variable", "time"}, {"min", 0.0},
                  {"max", 4e-15}, {"samples", 1601},
                  {"output", "fig3_excited.csv"}}})));
        return v;
    }();
    return list;
}

std::vector<std::string> run_preset(const std::string& name,
                                    const std::string& out_dir) {
    const Preset* found = nullptr;
    for (const auto& p : presets())
        if (p.name == name) { found = &p; break; }
    if (!found) throw std::invalid_argument("unknown preset '" + name + "'");

    const nlohmann::json cfg = nlohmann::json::parse(found->config_json);
    std::vector<std::string> written;
    for (const auto& sc : cfg["scans"]) {
        const Scenario s = scenario_from_json_text(sc["scenario"].dump());
        ScanSpec spec;
        spec.variable = sc["variable"] == "distance" ? ScanVariable::Distance
                                                     : ScanVariable::Time;
        spec.min = sc["min"].get<double>();
        spec.max = sc["max"].get<double>();
        spec.samples = sc["samples"].get<int>();
        const std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
        std::filesystem::create_directories(dir);
        spec.output_path = (dir/sc["output"].get<std::string>()).string();
        if (spec.variable == ScanVariable::Time)
            run_time_scan(s, spec);
        else
            run_distance_scan(s, spec, sc.value("time", 0.0));
        written.push_back(spec.output_path);
    }
    return written;
}

}  // namespace cpdyn
