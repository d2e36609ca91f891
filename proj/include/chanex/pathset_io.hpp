// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <cstdint>
#include <string>

#include "chanex/path_set.hpp"

namespace chanex {

enum class PhasePolicy { FromFile, SeededUniform };
enum class GainNormalization { SumMagnitude, SumPower, None };

/// Where a path set comes from and how its gains and phases are finished.
/// `source` is either a bundled scenario name ("fig2") or a CSV file path.
struct ScenarioSpec {
    std::string source = "fig2";
    double normalization = 1.0;  ///< target for the gain sum (must be > 0)
    GainNormalization norm_mode = GainNormalization::SumMagnitude;
    PhasePolicy phase_policy = PhasePolicy::SeededUniform;
    std::uint64_t seed = 1;
};

/// Loads and validates a path set. File format: CSV with header
/// `gain,delay_s,azimuth_rad,elevation_rad[,phase_rad]`, one row per path.
/// Without a phase column (or with phase_policy SeededUniform) phases are
/// drawn uniformly from [0, 2 pi) using the spec seed. Gains are rescaled to
/// the normalization target; a set already on target (within 1e-12 relative)
/// is left untouched so load/save round trips are bit exact.
PathSet load_pathset(const ScenarioSpec& spec);

/// Writes the CSV form with a phase column, 17 significant digits.
void save_pathset_csv(const PathSet& paths, const std::string& path);

/// The bundled 21-path urban macro scenario with seeded phases. The first
/// row is a near-zero gain placeholder path at delay zero; it is kept, not
/// pruned.
PathSet bundled_fig2(std::uint64_t seed);

// Deterministic synthetic scenarios for tests and experiments.

/// One unit-gain path.
PathSet single_path_scenario(double tau, double phi = 0.3, double theta = 1.2);

/// Two unit-gain paths `separation_symbols` symbol periods apart in delay,
/// same direction.
PathSet two_path_delay_scenario(double tau0, double separation_symbols, double T,
                                double phi = 0.3, double theta = 1.2);

/// Two unit-gain paths at the same delay, separated in azimuth.
PathSet two_path_angle_scenario(double tau, double phi0, double delta_phi,
                                double theta = 1.2);

/// L paths on a delay/azimuth lattice: delays tau0 + l * delay_spacing,
/// azimuths fanned out by angle_spacing, unit gains with distinct phases.
PathSet grid_scenario(int L, double tau0, double delay_spacing, double angle_spacing);

}  // namespace chanex
