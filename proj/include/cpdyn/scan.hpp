#pragma once

#include <string>
#include <vector>

#include "cpdyn/scenario.hpp"

namespace cpdyn {

enum class ScanVariable { Time, Distance };

/// One scan request.  Bounds are in the scenario's units (seconds for
/// SI/Gaussian times, meters/cm for distances, raw for natural units).
struct ScanSpec {
    ScanVariable variable = ScanVariable::Time;
    double min = 0.0;
    double max = 0.0;
    int samples = 0;
    double exclusion_window = kDefaultExclusion;  // dimensionless |a-1| half-width
    std::string output_path;
    std::string force_unit = "auto";  // "auto" | "dyn" | "N"

    void validate() const;
};

/// Sweep t at fixed scenario; one CSV row per sample:
///   t, x0, a, regime, phi_static, phi_dyn, phi_total, force_physical
/// Light-cone samples keep their row with empty force fields; the scan never
/// aborts on them.  Output is byte-deterministic (17 significant digits).
void run_time_scan(const Scenario& s, const ScanSpec& spec);

/// Sweep d at fixed t; rows
///   d, x0, a, regime, phi_static, phi_dyn, phi_total, force_physical
/// followed by a '#'-prefixed section listing the static-force zeros inside
/// the scanned range.
void run_distance_scan(const Scenario& scenario_template, const ScanSpec& spec,
                       double t_fixed);

/// Bundled figure-reproduction recipes.
struct Preset {
    std::string name;
    std::string description;
    std::string config_json;  // {"scans": [{scenario, variable, ...}]}
};

const std::vector<Preset>& presets();

/// Run every scan of the named preset, writing outputs under out_dir.
/// Returns the list of files written.  Unknown name -> std::invalid_argument.
std::vector<std::string> run_preset(const std::string& name,
                                    const std::string& out_dir);

}  // namespace cpdyn
