#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpdyn/force.hpp"
#include "cpdyn/scenario.hpp"

namespace cpdyn {

/// Raised when the Abel-ladder extrapolation does not meet its target; the
/// residual estimate travels with the error.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }
private:
    double residual_;
};

/// Controls for the Abel-regularized oscillatory quadrature.
/// The energy integral is evaluated as int_0^xmax G(x) e^{-eps x} dx for each
/// eps in the ladder and polynomial-extrapolated to eps = 0.
struct QuadratureSettings {
    std::vector<double> epsilon_ladder{0.1, 0.05, 0.025, 0.0125};
    double x_max = 0.0;              // 0: auto rule max(50*x0, 40/eps) per rung
    double panel_tolerance = 1e-10;  // absolute adaptive-quadrature budget
    int extrapolation_order = 3;
    double residual_limit = 1e-6;    // above this the evaluation throws

    void validate(double x0) const;

    static QuadratureSettings defaults() { return QuadratureSettings{}; }

    /// Ladder scaled into the analyticity radius |1-a| (the extrapolation
    /// converges geometrically only for eps well below the slowest
    /// oscillation frequency), 6 rungs, tight panels.  Used by the
    /// finite-difference force, the oracle check and the acceptance suite.
    static QuadratureSettings tuned(double x0, double a);
};

/// Dimensionless energy shift E = Delta E d^3/mu^2 of the braced (pole-free)
/// integrand, by Abel ladder + extrapolation.
EnergyShiftResult energy_quadrature(double x0, double a,
                                    const QuadratureSettings& settings =
                                        QuadratureSettings::defaults());

/// Same quantity through the differential-operator route: the pole-free
/// m-parameterized integral is evaluated at m in {1-m_step, 1, 1+m_step} and
/// the operator (2 - 2 d/dm + d^2/dm^2) is applied by central differences.
/// With refine_step the stencil is repeated at m_step/2 and Richardson
/// combined (O(m_step^4)); without it the raw second-order stencil is used.
EnergyShiftResult energy_quadrature_operator_form(
    double x0, double a, double m_step,
    const QuadratureSettings& settings = QuadratureSettings::defaults(),
    bool refine_step = true);

/// Dimensionless force by central finite differences of the quadrature
/// energy in the physical distance: both x0 and a are re-reduced at each
/// displaced distance.  One Richardson step (h, h/2) by default.
/// h_rel must lie in [1e-6, 1e-2]; t must stay outside the light-cone window
/// of both displaced distances.
double force_finite_difference(const Scenario& s, double t, double h_rel,
                               const std::optional<QuadratureSettings>& settings =
                                   std::nullopt,
                               bool richardson_step = true);

/// Discrete cavity mode-sum oracle (cubic box of side L, wall in the z = 0
/// plane, atom on the z axis at height d by default).
struct ModeSumSettings {
    double box_side = 0.0;   // L, scenario length units; must exceed 2d
    int max_index = 0;       // 0: derived from x_cutoff
    double atom_x = 0.0;     // transverse offsets from the box axis
    double atom_y = 0.0;
    double time = 0.0;

    // numerical controls (x = 2 k d units, matching the quadrature variable)
    std::vector<double> epsilon_ladder{0.2, 0.1, 0.05, 0.025};
    double x_taper = 240.0;  // radial cos^2 taper start
    double x_cutoff = 340.0; // hard end of the mode spectrum
    double table_step = 0.0025; // radial-table resolution in k*d

    void validate(const Scenario& s) const;
};

struct ModeSumResult {
    double value;            // dimensionless, units mu^2/d^3
    double residual;         // ladder-extrapolation residual estimate
    bool cutoff_warning;     // k_max d below the 30*x0 coverage rule
};

ModeSumResult mode_sum_energy(const Scenario& s, const ModeSumSettings& settings);

// ---------------------------------------------------------------------------
// Validation report: the machine-readable adjudication of the closed forms
// against the oracles.
// ---------------------------------------------------------------------------

struct OracleCheckOptions {
    std::vector<double> grid_x0{1.0, 2.0, 5.0};
    std::vector<double> grid_a{0.3, 0.7, 1.5, 3.0};
    std::vector<double> grid_a_operator{0.3, 0.7, 2.0};
    std::vector<double> mode_sum_boxes{20.0, 40.0, 80.0};  // L/d
    double force_tolerance = 1e-4;
    double operator_tolerance = 1e-5;
    double mode_sum_final_gap = 0.01;
    double fd_h_rel = 1e-3;
    bool include_mode_sum = true;
    std::optional<DynVariant> fault;   // evaluate this reading instead of the
                                       // adopted one (test hook)
};

struct ValidationReport {
    std::string json;   // full machine-readable report
    bool passed;
    std::string failure_summary;  // empty when passed
};

ValidationReport oracle_check(const OracleCheckOptions& options = {});

}  // namespace cpdyn
