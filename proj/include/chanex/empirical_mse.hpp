// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <cstdint>
#include <vector>

#include "chanex/array_geometry.hpp"
#include "chanex/ls_estimator.hpp"
#include "chanex/path_set.hpp"
#include "chanex/pulse.hpp"
#include "chanex/sage.hpp"

namespace chanex {

enum class EstimatorKind { LS, Sage };

/// Antenna-averaged empirical MSE per frequency:
/// (1 / (M trials)) sum over trials and antennas of |H_hat_m(f) - H_m(f)|^2.
struct MseCurve {
    std::vector<double> freqs;
    std::vector<double> values;  ///< +infinity where the estimator is flagged out of band
    int trials = 0;
};

/// Monte-Carlo MSE of an estimator against the true channel. Trials run in
/// parallel with disjoint per-trial seeds; accumulation is ordered by trial
/// index, so the output is bit-identical for any thread count.
MseCurve empirical_mse(const PathSet& paths, const ArrayGeometry& array,
                       const TrainingPulse& pulse, double noise_var,
                       const std::vector<double>& freqs, int trials, std::uint64_t seed,
                       EstimatorKind estimator, const SageConfig& sage_config = {},
                       const LsOptions& ls_options = {});

}  // namespace chanex
