// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "chanex/pulse.hpp"
#include "chanex/received_block.hpp"

namespace chanex {

struct LsOptions {
    /// Frequencies whose |S(f)|^2 falls below this fraction of the in-band
    /// level ||s||^2 K are flagged instead of divided by near zero.
    double spectrum_floor_rel = 1e-8;
};

/// Per-antenna, per-frequency least-squares channel estimate R_m(f) / S(f).
/// Out-of-band points carry a NaN estimate and a cleared in_band flag; the
/// deconvolution there would divide by leakage only.
struct LsEstimate {
    std::vector<double> freqs;
    Eigen::MatrixXcd h_hat;          ///< M x F; NaN where flagged
    std::vector<std::uint8_t> in_band;  ///< 1 where the estimate is valid
};

LsEstimate ls_estimate(const ReceivedBlock& block, const TrainingPulse& pulse,
                       const std::vector<double>& freqs, const LsOptions& options = {});

/// Analytic MSE of the least-squares estimate, sigma_w^2 N / |S(f)|^2 using
/// the actual truncated-pulse spectrum. Returns +infinity beyond the band
/// edge (1 + beta) / (2 T) or where the spectrum falls under the floor.
double ls_mse_analytic(const TrainingPulse& pulse, double noise_var, double f,
                       const LsOptions& options = {});

}  // namespace chanex
