// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/reference.hpp"

#include <stdexcept>

#include "chanex/channel.hpp"
#include "chanex/parallel.hpp"

namespace chanex::reference {

FisherMatrix build_fisher_direct(const PathSet& paths, const ArrayGeometry& array,
                                 const TrainingPulse& pulse, double noise_var) {
    if (noise_var <= 0.0)
        throw std::invalid_argument("build_fisher_direct: noise variance must be > 0");
    const int L = paths.size();
    const int M = array.size();
    const int N = pulse.N;

    FisherMatrix fim;
    fim.L = L;
    fim.siso = (M == 1);
    const int D = fim.dim();

    const SteeringSet st = build_steering_set(array, paths);

    // Columns of the mean's Jacobian, flattened over (m, n).
    Eigen::MatrixXcd jac(static_cast<Eigen::Index>(M) * N, D);
    for (int l = 0; l < L; ++l) {
        const auto& p = paths.paths[l];
        for (int n = 0; n < N; ++n) {
            const double t = pulse.sample_time(n) - p.tau;
            const double s = rrc_value(pulse, t);
            const double sd = rrc_derivative(pulse, t);
            for (int m = 0; m < M; ++m) {
                const Eigen::Index row = static_cast<Eigen::Index>(n) * M + m;
                jac(row, fim.tau_index(l)) = -p.alpha * st.a(m, l) * sd;
                if (!fim.siso) {
                    jac(row, fim.phi_index(l)) = p.alpha * st.d_phi(m, l) * s;
                    jac(row, fim.theta_index(l)) = p.alpha * st.d_theta(m, l) * s;
                }
                jac(row, fim.alpha_re_index(l)) = st.a(m, l) * s;
                jac(row, fim.alpha_im_index(l)) =
                    std::complex<double>{0.0, 1.0} * st.a(m, l) * s;
            }
        }
    }

    fim.matrix.setZero(D, D);
    const double scale = 2.0 / noise_var;
    for (int u = 0; u < D; ++u) {
        for (int v = u; v < D; ++v) {
            double acc = 0.0;
            for (Eigen::Index r = 0; r < jac.rows(); ++r)
                acc += std::real(std::conj(jac(r, u)) * jac(r, v));
            fim.matrix(u, v) = scale * acc;
            fim.matrix(v, u) = fim.matrix(u, v);
        }
    }
    return fim;
}

FullLbResult full_lower_bound_serial(const PathSet& paths, const ArrayGeometry& array,
                                     const TrainingPulse& pulse, double noise_var,
                                     const std::vector<double>& freqs,
                                     const LbOptions& options) {
    parallel::ScopedSerial serial;
    return full_lower_bound(paths, array, pulse, noise_var, freqs, options);
}

MseCurve empirical_mse_serial(const PathSet& paths, const ArrayGeometry& array,
                              const TrainingPulse& pulse, double noise_var,
                              const std::vector<double>& freqs, int trials,
                              std::uint64_t seed, EstimatorKind estimator,
                              const SageConfig& sage_config) {
    parallel::ScopedSerial serial;
    return empirical_mse(paths, array, pulse, noise_var, freqs, trials, seed, estimator,
                         sage_config);
}

EstimationResult sage_extract_serial(const ReceivedBlock& block, const ArrayGeometry& array,
                                     const TrainingPulse& pulse, const SageConfig& config) {
    parallel::ScopedSerial serial;
    return sage_extract(block, array, pulse, config);
}

}  // namespace chanex::reference
