// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.
//
// Wall-time comparison of the OpenMP kernels against their serial runs, plus
// the direct-summation information matrix as an algorithmic baseline.

#include <chrono>
#include <cstdio>
#include <functional>

#include "chanex/empirical_mse.hpp"
#include "chanex/parallel.hpp"
#include "chanex/pathset_io.hpp"
#include "chanex/reference.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    using namespace chanex;
    std::printf("threads available: %d\n\n", parallel::max_threads());

    const double T = 1.0 / 20e6;
    const PathSet paths = bundled_fig2(7);
    const ArrayGeometry array = ArrayGeometry::rectangular(8, 4, 299792458.0 / 3.5e9);
    const TrainingPulse pulse =
        TrainingPulse::make(0.2, T, 2, auto_window_symbols(paths.max_delay() / T));
    const double noise_var = pulse_energy(pulse) / 100.0;

    std::vector<double> freqs;
    for (double f = 0.0; f <= 3.0; f += 0.05) freqs.push_back(f / T);

    {
        const double direct =
            time_ms([&] { reference::build_fisher_direct(paths, array, pulse, noise_var); }, 1);
        parallel::set_enabled(false);
        const double serial = time_ms([&] { build_fisher(paths, array, pulse, noise_var); });
        parallel::set_enabled(true);
        const double par = time_ms([&] { build_fisher(paths, array, pulse, noise_var); });
        std::printf("%-28s direct-sum baseline %9.2f ms\n", "fisher (direct)", direct);
        report("fisher (gram factored)", serial, par);
    }

    {
        parallel::set_enabled(false);
        const double serial =
            time_ms([&] { full_lower_bound(paths, array, pulse, noise_var, freqs); });
        parallel::set_enabled(true);
        const double par =
            time_ms([&] { full_lower_bound(paths, array, pulse, noise_var, freqs); });
        report("bound curve", serial, par);
    }

    {
        std::vector<double> few_freqs(freqs.begin(), freqs.begin() + 8);
        const int trials = 16;
        parallel::set_enabled(false);
        const double serial = time_ms([&] {
            empirical_mse(paths, array, pulse, noise_var, few_freqs, trials, 11,
                          EstimatorKind::LS);
        });
        parallel::set_enabled(true);
        const double par = time_ms([&] {
            empirical_mse(paths, array, pulse, noise_var, few_freqs, trials, 11,
                          EstimatorKind::LS);
        });
        report("empirical LS mse", serial, par);
    }

    {
        const PathSet sparse = grid_scenario(3, 8.0 * T, 16.0 * T, 0.9);
        const TrainingPulse short_pulse = TrainingPulse::make(0.2, T, 2, 64);
        const ReceivedBlock block =
            synthesize_received(sparse, array, short_pulse, noise_var, 3);
        SageConfig cfg;
        cfg.L_target = 3;
        cfg.max_iterations = 5;
        parallel::set_enabled(false);
        const double serial =
            time_ms([&] { sage_extract(block, array, short_pulse, cfg); }, 1);
        parallel::set_enabled(true);
        const double par = time_ms([&] { sage_extract(block, array, short_pulse, cfg); }, 1);
        report("sage extraction", serial, par);
    }

    return 0;
}
