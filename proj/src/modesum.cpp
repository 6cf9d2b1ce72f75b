#include "cpdyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cpdyn/constants.hpp"
#include "cpdyn/quadrature.hpp"
#include "parallel.hpp"

namespace cpdyn {

void ModeSumSettings::validate(const Scenario& s) const {
    s.validate();
    if (!(box_side > 2.0*s.distance))
        throw std::invalid_argument("mode sum: box side must exceed 2*distance");
    if (!(time >= 0.0))
        throw std::invalid_argument("mode sum: time must be >= 0");
    if (!(time < (box_side - s.distance)/s.speed_of_light()))
        throw std::domain_error(
            "mode sum: t beyond (L-d)/c, reflections from the far walls reach the atom");
    if (epsilon_ladder.empty())
        throw std::invalid_argument("mode sum: empty epsilon ladder");
    if (!(x_taper > 0.0) || !(x_cutoff > x_taper))
        throw std::invalid_argument("mode sum: need 0 < x_taper < x_cutoff");
}

namespace {

// Radial factor at kappa = k*d:
//   kappa * (1 - cos(2a(kappa-kappa0)))/(kappa-kappa0) * taper(2 kappa)
double radial_factor(double kappa, double kappa0, double a,
                     double x_taper, double x_cutoff) {
    const double u = kappa - kappa0;
    const double nu = 2.0*a*u;
    double r;
    if (std::fabs(nu) < 1e-4) {             // resonance branch
        r = 2.0*a*a*u*(1.0 - nu*nu/24.0);
    } else {
        const double s = std::sin(a*u);
        r = 2.0*s*s/u;
    }
    const double x = 2.0*kappa;
    double w = 1.0;
    if (x >= x_cutoff) return 0.0;
    if (x > x_taper) {
        const double cth = std::cos(0.5*kPi*(x - x_taper)/(x_cutoff - x_taper));
        w = cth*cth;
    }
    return kappa*r*w;
}

}  // namespace

ModeSumResult mode_sum_energy(const Scenario& s, const ModeSumSettings& st) {
    st.validate(s);
    const double d = s.distance;
    const double lambda = st.box_side/d;          // L/d
    const double h = kPi/lambda;                  // kappa-lattice spacing (k*d)
    const double kappa0 = s.transition_wavenumber*d;          // x0/2
    const double a = s.speed_of_light()*st.time/(2.0*d);
    const double kappa_cut = st.x_cutoff/2.0;
    int N = static_cast<int>(std::floor(kappa_cut/h));
    if (st.max_index > 0) N = std::min(N, st.max_index);
    if (N < 1) throw std::invalid_argument("mode sum: cutoff below the first mode");
    const double kappa_eff = N*h;
    const bool warn = kappa_eff < 30.0*(2.0*kappa0);

    // Extrapolation folded into the radial tables: table_full carries the
    // Lagrange weights of the whole ladder, table_sub those of the trailing
    // rungs (the difference is the residual estimate).
    const auto& ladder = st.epsilon_ladder;
    const std::vector<double> w_full = extrapolation_weights(ladder);
    std::vector<double> sub(ladder.begin() + (ladder.size() > 1 ? 1 : 0), ladder.end());
    const std::vector<double> w_sub = extrapolation_weights(sub);

    const double dk = st.table_step;
    const std::size_t tab_n = static_cast<std::size_t>(kappa_cut/dk) + 3;
    // F = extrapolation-weighted damped radial factor; F2 = F/kappa^2 lets the
    // lattice loop trade its division for a second interpolation.
    std::vector<double> tab_full(tab_n, 0.0), tab_sub(tab_n, 0.0),
        tab2_full(tab_n, 0.0), tab2_sub(tab_n, 0.0);
    for (std::size_t i = 0; i < tab_n; ++i) {
        const double kappa = i*dk;
        const double base = radial_factor(kappa, kappa0, a, st.x_taper, st.x_cutoff);
        double vf = 0.0, vs = 0.0;
        for (std::size_t r = 0; r < ladder.size(); ++r) {
            const double damp = std::exp(-2.0*ladder[r]*kappa)*base;
            vf += w_full[r]*damp;
            if (r >= ladder.size() - sub.size())
                vs += w_sub[r - (ladder.size() - sub.size())]*damp;
        }
        tab_full[i] = vf;
        tab_sub[i] = vs;
        const double k2 = std::max(kappa*kappa, dk*dk);  // never sampled below h
        tab2_full[i] = vf/k2;
        tab2_sub[i] = vs/k2;
    }

    // Per-axis squared mode-function factors at the atom position, with
    // half-weight boundary terms (trapezoid estimator of the continuum).
    const double xi = st.atom_x/st.box_side + 0.5;
    const double eta = st.atom_y/st.box_side + 0.5;
    std::vector<double> cx2(N + 1), sx2(N + 1), cy2(N + 1), sy2(N + 1),
        sz2(N + 1), cz2(N + 1), wt(N + 1);
    for (int i = 0; i <= N; ++i) {
        const double cx = std::cos(i*kPi*xi), sx = std::sin(i*kPi*xi);
        const double cy = std::cos(i*kPi*eta), sy = std::sin(i*kPi*eta);
        const double cz = std::cos(i*h), sz = std::sin(i*h);
        cx2[i] = cx*cx; sx2[i] = sx*sx;
        cy2[i] = cy*cy; sy2[i] = sy*sy;
        cz2[i] = cz*cz; sz2[i] = sz*sz;
        wt[i] = i == 0 ? 0.5 : 1.0;
    }


    // Sphere cutoff: l^2 + m^2 + n^2 <= (kappa_cut/h)^2  (and each index <= N).
    const double s_cut = (kappa_cut/h)*(kappa_cut/h);
    const double inv_dk = 1.0/dk;

    // Transverse pairs (l, m) grouped by t2 = l^2 + m^2: every pair in a group
    // shares the same radial n-sums, which is a ~4x saving (sum-of-two-squares
    // multiplicity).  Sorted order keeps the reduction deterministic.
    struct Pair {
        int t2;
        short l, m;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(0.8*(N + 1.0)*(N + 1.0)) + 16);
    for (int l = 0; l <= N; ++l) {
        const long l2i = static_cast<long>(l)*l;
        if (static_cast<double>(l2i) > s_cut) break;
        for (int m = 0; m <= N; ++m) {
            const long t2i = l2i + static_cast<long>(m)*m;
            if (static_cast<double>(t2i) > s_cut) break;
            pairs.push_back(Pair{static_cast<int>(t2i),
                                 static_cast<short>(l), static_cast<short>(m)});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a_, const Pair& b_) {
        if (a_.t2 != b_.t2) return a_.t2 < b_.t2;
        if (a_.l != b_.l) return a_.l < b_.l;
        return a_.m < b_.m;
    });

    // group boundaries
    std::vector<std::size_t> group_start;
    group_start.reserve(pairs.size()/3 + 2);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (i == 0 || pairs[i].t2 != pairs[i - 1].t2) group_start.push_back(i);
    group_start.push_back(pairs.size());
    const long n_groups = static_cast<long>(group_start.size()) - 1;

    const double* __restrict tf = tab_full.data();
    const double* __restrict ts_ = tab_sub.data();
    const double* __restrict t2f = tab2_full.data();
    const double* __restrict t2s = tab2_sub.data();
    const double* __restrict psz2 = sz2.data();
    const double* __restrict pcz2 = cz2.data();
    const double* __restrict pwt = wt.data();
    const double h2 = h*h;

    std::vector<double> part_full(n_groups, 0.0), part_sub(n_groups, 0.0);
    detail::parallel_for(n_groups, [&](long gi) {
        const std::size_t lo = group_start[gi];
        const std::size_t hi = group_start[gi + 1];
        const double t2 = static_cast<double>(pairs[lo].t2);
        const int n_hi = std::min(
            N, static_cast<int>(std::floor(std::sqrt(s_cut - t2))));
        const int n_lo = pairs[lo].t2 == 0 ? 1 : 0;
        // radial sums shared by the whole group:
        //   S_f   = sum wt F          S_fs  = sum wt sz2 F
        //   S2_c  = sum wt cz2 F/k^2  S2_s  = sum wt sz2 F/k^2   (+ sub-ladder set)
        double S_f = 0, S_fs = 0, S2_c = 0, S2_s = 0;
        double T_f = 0, T_fs = 0, T2_c = 0, T2_s = 0;
        for (int n = n_lo; n <= n_hi; ++n) {
            const double n2 = static_cast<double>(n)*n;
            const double kappa = h*std::sqrt(t2 + n2);
            const double pos = kappa*inv_dk;
            const std::size_t ix = static_cast<std::size_t>(pos);
            const double fr = pos - ix;
            const double Ff = tf[ix] + fr*(tf[ix + 1] - tf[ix]);
            const double Fs = ts_[ix] + fr*(ts_[ix + 1] - ts_[ix]);
            const double F2f = t2f[ix] + fr*(t2f[ix + 1] - t2f[ix]);
            const double F2s = t2s[ix] + fr*(t2s[ix + 1] - t2s[ix]);
            const double w = pwt[n];
            const double wsz = w*psz2[n];
            const double wcz = w*pcz2[n];
            S_f += w*Ff;    S_fs += wsz*Ff;
            S2_c += wcz*F2f; S2_s += wsz*F2f;
            T_f += w*Fs;    T_fs += wsz*Fs;
            T2_c += wcz*F2s; T2_s += wsz*F2s;
        }
        double acc_f = 0.0, acc_s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const int l = pairs[i].l, m = pairs[i].m;
            const double l2 = static_cast<double>(l)*l;
            const double m2 = static_cast<double>(m)*m;
            const double A = cx2[l]*sy2[m];
            const double B = sx2[l]*cy2[m];
            const double C = sx2[l]*sy2[m];
            const double wlm = wt[l]*wt[m];
            // w * F = [8(A+B) sz2 - 2] F + 8 h^2 [t2 C cz2 - (l2 A + m2 B) sz2] F/k^2
            const double cAB = 8.0*(A + B);
            const double cz_c = 8.0*h2*t2*C;
            const double sz_c = -8.0*h2*(l2*A + m2*B);
            acc_f += wlm*(cAB*S_fs - 2.0*S_f + cz_c*S2_c + sz_c*S2_s);
            acc_s += wlm*(cAB*T_fs - 2.0*T_f + cz_c*T2_c + sz_c*T2_s);
        }
        part_full[gi] = acc_f;
        part_sub[gi] = acc_s;
    });

    // fixed-order reduction: bit-identical for any thread count
    double sum_f = 0.0, sum_s = 0.0, c_f = 0.0, c_s = 0.0;
    for (long g = 0; g < n_groups; ++g) {
        double y = part_full[g] - c_f, t = sum_f + y;
        c_f = (t - sum_f) - y; sum_f = t;
        y = part_sub[g] - c_s; t = sum_s + y;
        c_s = (t - sum_s) - y; sum_s = t;
    }
    const double scale = -(2.0*kPi/3.0)/(lambda*lambda*lambda);
    const double value = scale*sum_f;
    const double resid = std::fabs(scale*(sum_f - sum_s));
    return ModeSumResult{value, resid, warn};
}

}  // namespace cpdyn
