// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <Eigen/Dense>

#include "chanex/array_geometry.hpp"
#include "chanex/path_set.hpp"

namespace chanex {

/// Exact parametric channel frequency response at baseband offset f:
/// H_m(f) = sum_l alpha_l a_m(phi_l, theta_l) exp(-j 2 pi f tau_l).
/// f is an offset from the training-band center (f = 0 is mid-band).
Eigen::VectorXcd channel_frequency_response(const PathSet& paths,
                                            const ArrayGeometry& array, double f);

/// Channel response predicted from estimated path parameters; by construction
/// the same computation as channel_frequency_response applied to estimates.
inline Eigen::VectorXcd extrapolate(const PathSet& paths_hat, const ArrayGeometry& array,
                                    double f) {
    return channel_frequency_response(paths_hat, array, f);
}

/// Per-path steering responses and their angle derivatives, one column per
/// path. Shared precomputation for the information matrix, the bound
/// evaluation and the parameter search.
struct SteeringSet {
    Eigen::MatrixXcd a;        // M x L
    Eigen::MatrixXcd d_phi;    // M x L
    Eigen::MatrixXcd d_theta;  // M x L
};

SteeringSet build_steering_set(const ArrayGeometry& array, const PathSet& paths);

}  // namespace chanex
