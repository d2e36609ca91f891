// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/ls_estimator.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace chanex {

namespace {

bool frequency_usable(const TrainingPulse& pulse, double f, double spectrum_sq,
                      const LsOptions& options) {
    if (std::abs(f) >= cutoff_frequency(pulse)) return false;
    const double in_band_level = pulse_energy(pulse) * pulse.K;
    return spectrum_sq > options.spectrum_floor_rel * in_band_level;
}

}  // namespace

LsEstimate ls_estimate(const ReceivedBlock& block, const TrainingPulse& pulse,
                       const std::vector<double>& freqs, const LsOptions& options) {
    const int M = static_cast<int>(block.samples.rows());
    const int N = static_cast<int>(block.samples.cols());
    const int F = static_cast<int>(freqs.size());

    LsEstimate est;
    est.freqs = freqs;
    est.h_hat.resize(M, F);
    est.in_band.assign(F, 0);

    for (int fi = 0; fi < F; ++fi) {
        const double f = freqs[fi];
        const std::complex<double> S = pulse_spectrum(pulse, f);
        if (!frequency_usable(pulse, f, std::norm(S), options)) {
            est.h_hat.col(fi).setConstant(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        est.in_band[fi] = 1;
        // R_m(f) = sum_n r_m[n] exp(-j 2 pi f t_n); same transform convention
        // as pulse_spectrum so the delay phases cancel in the ratio.
        for (int m = 0; m < M; ++m) {
            std::complex<double> acc{0.0, 0.0};
            for (int n = 0; n < N; ++n)
                acc += block.samples(m, n) *
                       std::polar(1.0, -2.0 * std::numbers::pi * f * pulse.sample_time(n));
            est.h_hat(m, fi) = acc / S;
        }
    }
    return est;
}

double ls_mse_analytic(const TrainingPulse& pulse, double noise_var, double f,
                       const LsOptions& options) {
    const double spectrum_sq = std::norm(pulse_spectrum(pulse, f));
    if (!frequency_usable(pulse, f, spectrum_sq, options))
        return std::numeric_limits<double>::infinity();
    return noise_var * pulse.N / spectrum_sq;
}

}  // namespace chanex
