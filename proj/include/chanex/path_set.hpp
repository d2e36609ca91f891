// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <complex>
#include <vector>

namespace chanex {

/// One specular propagation path: complex gain, delay and direction of
/// arrival. Elevation theta is measured from the +z axis (theta = pi/2 is the
/// horizontal plane); azimuth phi lives in (-pi, pi].
struct PathParams {
    std::complex<double> alpha{1.0, 0.0};  ///< linear complex gain
    double tau = 0.0;                      ///< delay (seconds), >= 0
    double phi = 0.0;                      ///< azimuth (radians)
    double theta = 1.5707963267948966;     ///< elevation (radians), in [0, pi]
};

/// Ordered collection of specular paths; the ground-truth parameter vector of
/// a channel realization.
struct PathSet {
    std::vector<PathParams> paths;

    int size() const { return static_cast<int>(paths.size()); }
    double min_delay() const;
    double max_delay() const;
    /// max_delay - min_delay.
    double delay_spread() const;

    /// Enforces the domain invariants: at least one path, non-negative finite
    /// delays and gains, angles in range, no exact duplicate of
    /// (tau, phi, theta). Throws std::invalid_argument.
    void validate() const;
};

struct MergeDiagnostics {
    int groups_merged = 0;              ///< number of multi-path groups collapsed
    bool degenerate_cancellation = false;  ///< a merged group summed to ~zero gain
};

struct MergeResult {
    PathSet paths;
    MergeDiagnostics diagnostics;
};

/// Collapses groups of nearly coincident paths into single rays. Grouping is
/// transitive closure over pairs within delay_tol in delay and within
/// angle_tol in both azimuth (wrapped) and elevation; each group is replaced
/// by one path carrying the summed complex gain and the gain-magnitude
/// weighted mean delay and angles. Iterated until stable, so the operation is
/// idempotent.
MergeResult merge_close_paths(const PathSet& paths, double delay_tol, double angle_tol);

}  // namespace chanex
