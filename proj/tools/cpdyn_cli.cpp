// Command-line front end: scenario-driven scans, oracle checks and
// figure-data presets.  Exit codes: 0 ok, 1 user error, 2 numerical failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cpdyn/force.hpp"
#include "cpdyn/oracle.hpp"
#include "cpdyn/scan.hpp"
#include "cpdyn/scenario.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"dynamical atom-wall Casimir-Polder force toolkit"};
    app.require_subcommand(1);

    // ---- time-scan ----
    auto* ts = app.add_subcommand("time-scan", "force vs time at fixed distance");
    std::string ts_scenario, ts_out, ts_units = "auto";
    double ts_min = 0.0, ts_max = 0.0, ts_excl = cpdyn::kDefaultExclusion;
    int ts_samples = 400;
    ts->add_option("--scenario", ts_scenario, "scenario JSON file")->required();
    ts->add_option("--out", ts_out, "output CSV path")->required();
    ts->add_option("--min", ts_min, "start time");
    ts->add_option("--max", ts_max, "end time")->required();
    ts->add_option("--samples", ts_samples, "row count (>=2)");
    ts->add_option("--exclusion", ts_excl, "light-cone half-width in |a-1|");
    ts->add_option("--units", ts_units, "force column unit: auto|dyn|N");

    // ---- distance-scan ----
    auto* ds = app.add_subcommand("distance-scan", "force vs distance at fixed time");
    std::string ds_scenario, ds_out, ds_units = "auto";
    double ds_min = 0.0, ds_max = 0.0, ds_t = 0.0,
           ds_excl = cpdyn::kDefaultExclusion;
    int ds_samples = 400;
    ds->add_option("--scenario", ds_scenario, "scenario JSON file")->required();
    ds->add_option("--out", ds_out, "output CSV path")->required();
    ds->add_option("--min", ds_min, "smallest distance")->required();
    ds->add_option("--max", ds_max, "largest distance")->required();
    ds->add_option("--time", ds_t, "fixed time");
    ds->add_option("--samples", ds_samples, "row count (>=2)");
    ds->add_option("--exclusion", ds_excl, "light-cone half-width in |a-1|");
    ds->add_option("--units", ds_units, "force column unit: auto|dyn|N");

    // ---- oracle-check ----
    auto* oc = app.add_subcommand(
        "oracle-check", "validate the closed forms against the numerical oracles");
    std::string oc_out = "validation_report.json", oc_fault;
    bool oc_skip_modes = false;
    oc->add_option("--out", oc_out, "report JSON path");
    oc->add_flag("--skip-mode-sum", oc_skip_modes,
                 "skip the (slow) cavity mode-sum table");
    oc->add_option("--fault", oc_fault,
                   "evaluate a rejected term transcription instead of the "
                   "adopted one (diagnostic)");

    // ---- presets ----
    auto* pr = app.add_subcommand("presets", "list or run bundled figure recipes");
    std::string pr_name, pr_dir = ".";
    pr->add_option("name", pr_name, "preset to run (omit to list)");
    pr->add_option("--out-dir", pr_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (ts->parsed()) {
        const cpdyn::Scenario s = cpdyn::scenario_from_json_file(ts_scenario);
        cpdyn::ScanSpec spec;
        spec.variable = cpdyn::ScanVariable::Time;
        spec.min = ts_min;
        spec.max = ts_max;
        spec.samples = ts_samples;
        spec.exclusion_window = ts_excl;
        spec.output_path = ts_out;
        spec.force_unit = ts_units;
        cpdyn::run_time_scan(s, spec);
        std::cout << "wrote " << ts_out << "\n";
        return 0;
    }
    if (ds->parsed()) {
        const cpdyn::Scenario s = cpdyn::scenario_from_json_file(ds_scenario);
        cpdyn::ScanSpec spec;
        spec.variable = cpdyn::ScanVariable::Distance;
        spec.min = ds_min;
        spec.max = ds_max;
        spec.samples = ds_samples;
        spec.exclusion_window = ds_excl;
        spec.output_path = ds_out;
        spec.force_unit = ds_units;
        cpdyn::run_distance_scan(s, spec, ds_t);
        std::cout << "wrote " << ds_out << "\n";
        return 0;
    }
    if (oc->parsed()) {
        cpdyn::OracleCheckOptions opts;
        opts.include_mode_sum = !oc_skip_modes;
        if (!oc_fault.empty()) {
            using V = cpdyn::DynVariant;
            for (V v : {V::PlusDenominatorLeading, V::BracketTimesSix,
                        V::AltElementaryAfter, V::DropPiBefore})
                if (oc_fault == cpdyn::dyn_variant_name(v)) opts.fault = v;
            if (!opts.fault) {
                std::cerr << "unknown fault variant '" << oc_fault << "'\n";
                return 1;
            }
        }
        const cpdyn::ValidationReport rep = cpdyn::oracle_check(opts);
        std::ofstream out(oc_out, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write '" << oc_out << "'\n";
            return 1;
        }
        out << rep.json << "\n";
        std::cout << (rep.passed ? "oracle check passed" : "oracle check FAILED")
                  << "; report written to " << oc_out << "\n";
        if (!rep.passed) std::cout << rep.failure_summary << "\n";
        return rep.passed ? 0 : 2;
    }
    if (pr->parsed()) {
        if (pr_name.empty()) {
            for (const auto& p : cpdyn::presets())
                std::cout << p.name << "\t" << p.description << "\n";
            return 0;
        }
        for (const auto& f : cpdyn::run_preset(pr_name, pr_dir))
            std::cout << "wrote " << f << "\n";
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cpdyn::convergence_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const cpdyn::light_cone_error& e) {
        std::cerr << "light-cone point rejected: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
