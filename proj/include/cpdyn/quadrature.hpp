#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace cpdyn {

struct PanelResult {
    double value;
    double error;      // |K15 - G7| based estimate
    double magnitude;  // K15 estimate of int |f| (error-floor scale)
};

/// 15-point Gauss-Kronrod rule on [a, b].
PanelResult gauss_kronrod_15(const std::function<double(double)>& f,
                             double a, double b);

/// Adaptive integration of f over [a, b]: the interval is pre-split into
/// panels of at most seed_step, each refined by bisection until the local
/// error estimate fits within its share of abs_tol.  Deterministic
/// evaluation and summation order.
double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          double abs_tol, double seed_step,
                          double* error_estimate = nullptr);

struct Extrapolated {
    double value;
    double residual;   // |last diagonal step|, conservative error estimate
};

/// Neville polynomial extrapolation of (x_i, y_i) to x = 0, using at most
/// (max_degree+1) of the trailing points.  x_i must be distinct.
Extrapolated extrapolate_to_zero(const std::vector<double>& xs,
                                 const std::vector<double>& ys,
                                 int max_degree);

/// Lagrange weights w_i with p(0) = sum_i w_i y_i for nodes xs.
std::vector<double> extrapolation_weights(const std::vector<double>& xs);

}  // namespace cpdyn
