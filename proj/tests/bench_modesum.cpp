// Timing probe for the mode-sum kernel (not part of ctest).
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "cpdyn/oracle.hpp"

int main(int argc, char** argv) {
    const double lam = argc > 1 ? std::atof(argv[1]) : 20.0;
    const cpdyn::Scenario s = cpdyn::make_natural_scenario(1.0, 1.0, 1.0);
    cpdyn::ModeSumSettings ms;
    ms.box_side = lam;
    ms.time = 1.0;  // a = 0.5
    if (argc > 2) ms.table_step = std::atof(argv[2]);
    const auto t0 = std::chrono::steady_clock::now();
    const cpdyn::ModeSumResult r = cpdyn::mode_sum_energy(s, ms);
    const double dt = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - t0).count();
    const double ref = 0.058815714678991801;
    std::printf("lam=%g value=%.12g resid=%.3g warn=%d time=%.2fs gap=%+.5f%%\n",
                lam, r.value, r.residual, r.cutoff_warning, dt,
                (r.value - ref)/ref*100);
    return 0;
}
