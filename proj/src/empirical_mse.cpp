// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/empirical_mse.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chanex/channel.hpp"
#include "chanex/parallel.hpp"
#include "chanex/received_block.hpp"
#include "chanex/rng.hpp"

namespace chanex {

MseCurve empirical_mse(const PathSet& paths, const ArrayGeometry& array,
                       const TrainingPulse& pulse, double noise_var,
                       const std::vector<double>& freqs, int trials, std::uint64_t seed,
                       EstimatorKind estimator, const SageConfig& sage_config,
                       const LsOptions& ls_options) {
    if (trials < 1) throw std::invalid_argument("empirical_mse: trials must be >= 1");
    const int F = static_cast<int>(freqs.size());
    const int M = array.size();

    Eigen::MatrixXcd truth(M, F);
    for (int fi = 0; fi < F; ++fi)
        truth.col(fi) = channel_frequency_response(paths, array, freqs[fi]);

    SageConfig sage = sage_config;
    if (estimator == EstimatorKind::Sage && sage.L_target < 1) sage.L_target = paths.size();

    // Out-of-band flags depend on the pulse spectrum only, not on the data.
    std::vector<std::uint8_t> usable(F, 1);
    if (estimator == EstimatorKind::LS)
        for (int fi = 0; fi < F; ++fi)
            usable[fi] = std::isfinite(ls_mse_analytic(pulse, 1.0, freqs[fi], ls_options));

    // Per-trial rows; summed in trial order after the parallel region.
    Eigen::MatrixXd per_trial = Eigen::MatrixXd::Zero(trials, F);

    const bool par = parallel::enabled();
#pragma omp parallel for schedule(dynamic) if (par)
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_stream_seed(seed, static_cast<std::uint64_t>(t));
        const ReceivedBlock block =
            synthesize_received(paths, array, pulse, noise_var, trial_seed);
        if (estimator == EstimatorKind::LS) {
            const LsEstimate est = ls_estimate(block, pulse, freqs, ls_options);
            for (int fi = 0; fi < F; ++fi) {
                if (!usable[fi]) continue;
                per_trial(t, fi) = (est.h_hat.col(fi) - truth.col(fi)).squaredNorm() / M;
            }
        } else {
            const EstimationResult est = sage_extract(block, array, pulse, sage);
            for (int fi = 0; fi < F; ++fi) {
                const Eigen::VectorXcd h = extrapolate(est.paths, array, freqs[fi]);
                per_trial(t, fi) = (h - truth.col(fi)).squaredNorm() / M;
            }
        }
    }

    MseCurve curve;
    curve.freqs = freqs;
    curve.trials = trials;
    curve.values.assign(F, 0.0);
    for (int fi = 0; fi < F; ++fi) {
        if (!usable[fi]) {
            curve.values[fi] = std::numeric_limits<double>::infinity();
            continue;
        }
        double acc = 0.0;
        for (int t = 0; t < trials; ++t) acc += per_trial(t, fi);
        curve.values[fi] = acc / trials;
    }
    return curve;
}

}  // namespace chanex
