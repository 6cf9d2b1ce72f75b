#include "cpdyn/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cpdyn {
namespace {

// Kronrod-15 nodes/weights on [-1,1]; odd nodes are the embedded Gauss-7 set.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// Bounded refinement: |K15-G7| saturates near rounding level for smooth
// panels, so subdivision stops at a modest depth and the remaining estimate
// is accumulated honestly instead of chasing an unreachable share.
void refine(const std::function<double(double)>& f, double a, double b,
            double tol, int depth, Kahan& acc, Kahan& err_acc) {
    const PanelResult r = gauss_kronrod_15(f, a, b);
    const double floor_ = std::max(2e-13*r.magnitude, 1e-14*std::fabs(r.value));
    if (r.error <= std::max(tol, floor_) || depth >= 5) {
        acc.add(r.value);
        err_acc.add(r.error);
        return;
    }
    const double mid = 0.5*(a + b);
    refine(f, a, mid, tol/2, depth + 1, acc, err_acc);
    refine(f, mid, b, tol/2, depth + 1, acc, err_acc);
}

}  // namespace

PanelResult gauss_kronrod_15(const std::function<double(double)>& f,
                             double a, double b) {
    const double c = 0.5*(a + b);
    const double h = 0.5*(b - a);
    const double fc = f(c);
    double resk = kWgk[7]*fc;
    double resg = kWg[3]*fc;
    double resabs = kWgk[7]*std::fabs(fc);
    for (int j = 0; j < 7; ++j) {
        const double x = h*kXgk[j];
        const double f1 = f(c - x), f2 = f(c + x);
        resk += kWgk[j]*(f1 + f2);
        resabs += kWgk[j]*(std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j/2]*(f1 + f2);
    }
    const double value = resk*h;
    const double err = std::fabs((resk - resg)*h);
    return PanelResult{value, err, resabs*h};
}

double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          double abs_tol, double seed_step,
                          double* error_estimate) {
    if (!(b > a)) {
        if (error_estimate) *error_estimate = 0.0;
        return 0.0;
    }
    const double len = b - a;
    const int n = std::max(1, static_cast<int>(std::ceil(len/seed_step)));
    Kahan acc, err_acc;
    for (int k = 0; k < n; ++k) {
        const double pa = a + len*k/n;
        const double pb = a + len*(k + 1)/n;
        refine(f, pa, pb, abs_tol/n, 0, acc, err_acc);
    }
    if (error_estimate) *error_estimate = err_acc.sum;
    return acc.sum;
}

Extrapolated extrapolate_to_zero(const std::vector<double>& xs,
                                 const std::vector<double>& ys,
                                 int max_degree) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("extrapolate_to_zero: bad inputs");
    const int use = std::min<int>(max_degree + 1, static_cast<int>(xs.size()));
    const int off = static_cast<int>(xs.size()) - use;
    std::vector<double> t(ys.begin() + off, ys.end());
    std::vector<double> x(xs.begin() + off, xs.end());
    double prev = t.back();
    for (int i = 1; i < use; ++i) {
        for (int j = 0; j + i < use; ++j)
            t[j] = (x[j]*t[j + 1] - x[j + i]*t[j])/(x[j] - x[j + i]);
        if (i == use - 2) prev = t[1];   // best (use-1)-point estimate
    }
    const double resid = use > 1 ? std::fabs(t[0] - prev) : 0.0;
    return Extrapolated{t[0], resid};
}

std::vector<double> extrapolation_weights(const std::vector<double>& xs) {
    const int n = static_cast<int>(xs.size());
    std::vector<double> w(n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i) w[i] *= xs[j]/(xs[j] - xs[i]);
    return w;
}

}  // namespace cpdyn
