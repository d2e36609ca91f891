// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <Eigen/Dense>

#include "chanex/array_geometry.hpp"
#include "chanex/path_set.hpp"
#include "chanex/pulse.hpp"

namespace chanex {

/// Fisher information matrix of the sampled Gaussian observation model with
/// respect to the real path parameters. Ordering of the parameter vector:
///   multi-antenna: [tau_1..L, phi_1..L, theta_1..L, alphaR_1..L, alphaI_1..L]
///   single antenna (angles unobservable): [tau_1..L, alphaR_1..L, alphaI_1..L]
/// The 2 / sigma_w^2 prefactor is included. Real symmetric and positive
/// semidefinite by construction.
struct FisherMatrix {
    Eigen::MatrixXd matrix;
    int L = 0;
    bool siso = false;

    int dim() const { return siso ? 3 * L : 5 * L; }
    int tau_index(int l) const { return l; }
    int phi_index(int l) const { return L + l; }      // multi-antenna only
    int theta_index(int l) const { return 2 * L + l; }  // multi-antenna only
    int alpha_re_index(int l) const { return siso ? L + l : 3 * L + l; }
    int alpha_im_index(int l) const { return siso ? 2 * L + l : 4 * L + l; }
};

/// Assembles the information matrix by exact summation of the derivative
/// cross products over all samples and antennas. The sums factor into delay
/// domain Gram matrices (pulse and pulse-derivative inner products) and
/// antenna domain Gram matrices (steering and steering-derivative inner
/// products); both are computed with analytic derivatives.
FisherMatrix build_fisher(const PathSet& paths, const ArrayGeometry& array,
                          const TrainingPulse& pulse, double noise_var);

namespace detail {

/// Sampled pulse replicas per path: S(n, l) = s(t_n - tau_l) and its time
/// derivative. Reused by the information matrix and the parameter search.
struct DelaySamples {
    Eigen::MatrixXd s;      // N x L
    Eigen::MatrixXd s_dot;  // N x L
};

DelaySamples build_delay_samples(const PathSet& paths, const TrainingPulse& pulse);

}  // namespace detail

}  // namespace chanex
