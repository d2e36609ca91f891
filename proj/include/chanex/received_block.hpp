// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "chanex/array_geometry.hpp"
#include "chanex/path_set.hpp"
#include "chanex/pulse.hpp"

namespace chanex {

/// One noisy observation of the training transmission: M x N complex samples
/// r_m[n] = sum_l alpha_l a_m(phi_l, theta_l) s(t_n - tau_l) + w_m[n], with
/// white circularly symmetric Gaussian noise of per-sample variance noise_var.
struct ReceivedBlock {
    Eigen::MatrixXcd samples;  ///< M x N
    double noise_var = 0.0;    ///< sigma_w^2 per complex sample
    TrainingPulse pulse;       ///< sampling grid the block was generated on

    /// Debug dump, one row per (m, n) pair: m,n,re,im.
    void write_csv(const std::string& path) const;
};

struct SynthesisOptions {
    /// Margin (in symbol periods) of pulse tail the window must cover on each
    /// side of the delay span.
    double tail_symbols = 8.0;
    /// Skip the window-coverage check (truncated paths allowed).
    bool allow_uncovered_window = false;
};

/// Noiseless means mu_{m,n} for the given paths on the pulse's sampling grid.
Eigen::MatrixXcd noiseless_received(const PathSet& paths, const ArrayGeometry& array,
                                    const TrainingPulse& pulse);

/// Synthesizes a received block. Deterministic for a fixed seed: noise is
/// drawn sample by sample (n outer, m inner) from one SplitMix64 stream.
/// Throws std::invalid_argument if the observation window does not cover the
/// delay span plus pulse tails, unless options allow it.
ReceivedBlock synthesize_received(const PathSet& paths, const ArrayGeometry& array,
                                  const TrainingPulse& pulse, double noise_var,
                                  std::uint64_t seed, const SynthesisOptions& options = {});

}  // namespace chanex
