// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <string>
#include <vector>

#include "chanex/array_geometry.hpp"
#include "chanex/path_set.hpp"
#include "chanex/pulse.hpp"
#include "chanex/received_block.hpp"

namespace chanex {

/// Tuning for the space-alternating EM extraction. Zeros select defaults
/// derived from the pulse and array: delay step T_s / 4 over the usable part
/// of the window, angle steps 2 pi / (16 x aperture in wavelengths) per axis.
struct SageConfig {
    int L_target = 0;         ///< paths to extract; 0 = match the scenario (harness contexts)
    int max_iterations = 20;  ///< full refinement sweeps after initialization
    double tol = 1e-6;        ///< stop when the largest relative parameter change drops below

    double delay_step = 0.0;  ///< seconds; 0 = T_s / 4
    double delay_min = 0.0;   ///< search range start (seconds)
    double delay_max = -1.0;  ///< search range end; negative = window end minus tail
    double angle_step = 0.0;  ///< radians; 0 = aperture-derived per axis
    int refine_steps = 20;    ///< dyadic halvings of the local pattern search

    int l_cap = 64;  ///< sanity cap on L_target
};

struct EstimationResult {
    PathSet paths;             ///< extracted parameters, strongest-first order
    int iterations_used = 0;   ///< refinement sweeps run
    double residual_energy = 0.0;  ///< squared norm of data minus reconstruction
    bool converged = false;    ///< tol reached within max_iterations
    std::vector<double> sweep_residuals;  ///< residual energy after each sweep; non-increasing

    /// Writes the extracted paths in the standard path-set CSV format plus a
    /// small diagnostics sidecar (iterations, residual energy, convergence).
    void save(const std::string& pathset_csv, const std::string& diagnostics_csv) const;
};

/// High-resolution extraction of L_target specular paths from one received
/// block. Initialization is successive cancellation: the strongest remaining
/// path is located by matched filtering on the delay/angle grid, its gain is
/// the closed-form least-squares coefficient, and its reconstruction is
/// subtracted. Refinement sweeps then cycle over the paths; each step adds
/// the path's reconstruction back to the residual and re-maximizes the
/// matched-filter objective by grid search plus dyadic local refinement (the
/// previous parameters are always kept as a candidate, so the residual energy
/// never increases). A single-antenna block estimates delay and gain only;
/// azimuth and elevation are reported at the sentinel values (0, pi/2).
EstimationResult sage_extract(const ReceivedBlock& block, const ArrayGeometry& array,
                              const TrainingPulse& pulse, const SageConfig& config);

}  // namespace chanex
