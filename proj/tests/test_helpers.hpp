// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "chanex/array_geometry.hpp"
#include "chanex/channel.hpp"
#include "chanex/fisher.hpp"
#include "chanex/path_set.hpp"
#include "chanex/pulse.hpp"
#include "chanex/received_block.hpp"

namespace test_helpers {

constexpr double kLambda35GHz = 299792458.0 / 3.5e9;

// Flattened complex mean vector mu over (m, n) for the current parameters.
inline Eigen::VectorXcd mean_vector(const chanex::PathSet& paths,
                                    const chanex::ArrayGeometry& array,
                                    const chanex::TrainingPulse& pulse) {
    const Eigen::MatrixXcd mean = chanex::noiseless_received(paths, array, pulse);
    return Eigen::Map<const Eigen::VectorXcd>(mean.data(), mean.size());
}

// Independent finite-difference oracle for the information matrix: the mean's
// Jacobian is built by central differences of the full mean vector, then the
// matrix is (2 / sigma^2) Re{J^H J}. Shares only the forward model with the
// implementation under test.
inline Eigen::MatrixXd fisher_fd_oracle(const chanex::PathSet& paths,
                                        const chanex::ArrayGeometry& array,
                                        const chanex::TrainingPulse& pulse,
                                        double noise_var) {
    const int L = paths.size();
    const bool siso = array.is_siso();
    const int D = siso ? 3 * L : 5 * L;
    const Eigen::Index MN = static_cast<Eigen::Index>(array.size()) * pulse.N;

    auto perturbed = [&](int l, int which, double h) {
        chanex::PathSet p = paths;
        auto& path = p.paths[l];
        switch (which) {
            case 0: path.tau += h; break;
            case 1: path.phi += h; break;
            case 2: path.theta += h; break;
            case 3: path.alpha += std::complex<double>{h, 0.0}; break;
            default: path.alpha += std::complex<double>{0.0, h}; break;
        }
        return mean_vector(p, array, pulse);
    };

    Eigen::MatrixXcd jac(MN, D);
    int col = 0;
    const double h_tau = 1e-6 * pulse.T;
    const double h_ang = 1e-6;
    const double h_alpha = 1e-6;
    auto fill = [&](int which, double h) {
        for (int l = 0; l < L; ++l)
            jac.col(col++) = (perturbed(l, which, h) - perturbed(l, which, -h)) / (2.0 * h);
    };
    fill(0, h_tau);
    if (!siso) {
        fill(1, h_ang);
        fill(2, h_ang);
    }
    fill(3, h_alpha);
    fill(4, h_alpha);

    Eigen::MatrixXd fim(D, D);
    for (int u = 0; u < D; ++u)
        for (int v = 0; v < D; ++v)
            fim(u, v) = 2.0 / noise_var * (jac.col(u).dot(jac.col(v))).real();
    return fim;
}

// Deterministic pseudo-random scenarios for property tests.
inline chanex::PathSet random_paths(int L, double T, std::uint64_t seed) {
    chanex::PathSet ps;
    std::uint64_t state = seed;
    auto next = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    for (int l = 0; l < L; ++l) {
        chanex::PathParams p;
        p.alpha = std::polar(0.3 + next(), 2.0 * M_PI * next() - M_PI);
        p.tau = (2.0 + 40.0 * next()) * T;
        p.phi = 2.8 * (next() - 0.5);
        p.theta = 0.4 + 2.2 * next();
        ps.paths.push_back(p);
    }
    return ps;
}

}  // namespace test_helpers
