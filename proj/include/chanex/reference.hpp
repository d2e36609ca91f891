// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include "chanex/bounds.hpp"
#include "chanex/empirical_mse.hpp"
#include "chanex/fisher.hpp"
#include "chanex/sage.hpp"

namespace chanex::reference {

/// Direct evaluation of the information matrix: the derivative vectors of the
/// noiseless mean are materialized sample by sample and every element is the
/// plain double sum over antennas and samples. Independent route from the
/// Gram-factored production kernel; serial; kept for testing and benchmarks.
FisherMatrix build_fisher_direct(const PathSet& paths, const ArrayGeometry& array,
                                 const TrainingPulse& pulse, double noise_var);

/// Serial executions of the parallel kernels (identical code paths with the
/// OpenMP scheduling disabled). Results are bit-identical to the parallel
/// runs by construction; the benchmark target compares their wall times.
FullLbResult full_lower_bound_serial(const PathSet& paths, const ArrayGeometry& array,
                                     const TrainingPulse& pulse, double noise_var,
                                     const std::vector<double>& freqs,
                                     const LbOptions& options = {});

MseCurve empirical_mse_serial(const PathSet& paths, const ArrayGeometry& array,
                              const TrainingPulse& pulse, double noise_var,
                              const std::vector<double>& freqs, int trials,
                              std::uint64_t seed, EstimatorKind estimator,
                              const SageConfig& sage_config = {});

EstimationResult sage_extract_serial(const ReceivedBlock& block, const ArrayGeometry& array,
                                     const TrainingPulse& pulse, const SageConfig& config);

}  // namespace chanex::reference
