// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/channel.hpp"

#include <numbers>

namespace chanex {

Eigen::VectorXcd channel_frequency_response(const PathSet& paths,
                                            const ArrayGeometry& array, double f) {
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(array.size());
    for (const auto& p : paths.paths) {
        const std::complex<double> rot =
            p.alpha * std::polar(1.0, -2.0 * std::numbers::pi * f * p.tau);
        h += rot * steering_vector(array, p.phi, p.theta);
    }
    return h;
}

SteeringSet build_steering_set(const ArrayGeometry& array, const PathSet& paths) {
    const int M = array.size();
    const int L = paths.size();
    SteeringSet s;
    s.a.resize(M, L);
    s.d_phi.resize(M, L);
    s.d_theta.resize(M, L);
    for (int l = 0; l < L; ++l) {
        const auto& p = paths.paths[l];
        s.a.col(l) = steering_vector(array, p.phi, p.theta);
        const SteeringDerivatives d = steering_derivatives(array, p.phi, p.theta);
        s.d_phi.col(l) = d.d_phi;
        s.d_theta.col(l) = d.d_theta;
    }
    return s;
}

}  // namespace chanex
