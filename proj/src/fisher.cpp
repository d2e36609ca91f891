// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/fisher.hpp"

#include <stdexcept>

#include "chanex/channel.hpp"
#include "chanex/parallel.hpp"

namespace chanex {

namespace detail {

DelaySamples build_delay_samples(const PathSet& paths, const TrainingPulse& pulse) {
    const int N = pulse.N;
    const int L = paths.size();
    DelaySamples d;
    d.s.resize(N, L);
    d.s_dot.resize(N, L);
    const bool par = parallel::enabled();
#pragma omp parallel for schedule(static) if (par)
    for (int l = 0; l < L; ++l) {
        const double tau = paths.paths[l].tau;
        for (int n = 0; n < N; ++n) {
            const double t = pulse.sample_time(n) - tau;
            d.s(n, l) = rrc_value(pulse, t);
            d.s_dot(n, l) = rrc_derivative(pulse, t);
        }
    }
    return d;
}

}  // namespace detail

namespace {

// Pairwise delay-domain inner products. Each output entry is one serial dot
// product, so the result does not depend on the thread count.
void delay_grams(const detail::DelaySamples& d, Eigen::MatrixXd& ss, Eigen::MatrixXd& dd,
                 Eigen::MatrixXd& ds) {
    const int L = static_cast<int>(d.s.cols());
    ss.resize(L, L);
    dd.resize(L, L);
    ds.resize(L, L);
    const bool par = parallel::enabled();
#pragma omp parallel for schedule(static) if (par)
    for (int k = 0; k < L * L; ++k) {
        const int l = k / L;
        const int lp = k % L;
        if (lp >= l) {
            ss(l, lp) = d.s.col(l).dot(d.s.col(lp));
            dd(l, lp) = d.s_dot.col(l).dot(d.s_dot.col(lp));
            ss(lp, l) = ss(l, lp);
            dd(lp, l) = dd(l, lp);
        }
        // s_dot_l . s_lp is not symmetric; fill the full matrix
        ds(l, lp) = d.s_dot.col(l).dot(d.s.col(lp));
    }
}

}  // namespace

FisherMatrix build_fisher(const PathSet& paths, const ArrayGeometry& array,
                          const TrainingPulse& pulse, double noise_var) {
    if (noise_var <= 0.0) throw std::invalid_argument("build_fisher: noise variance must be > 0");
    const int L = paths.size();
    const int M = array.size();

    FisherMatrix fim;
    fim.L = L;
    fim.siso = (M == 1);

    const detail::DelaySamples d = detail::build_delay_samples(paths, pulse);
    Eigen::MatrixXd Sss, Sdd, Sds;
    delay_grams(d, Sss, Sdd, Sds);

    const SteeringSet st = build_steering_set(array, paths);
    const Eigen::MatrixXcd Gaa = st.a.adjoint() * st.a;
    Eigen::MatrixXcd Gpp, Gtt, Gpt, Gap, Gat, Gpa, Gta;
    if (!fim.siso) {
        Gpp = st.d_phi.adjoint() * st.d_phi;
        Gtt = st.d_theta.adjoint() * st.d_theta;
        Gpt = st.d_phi.adjoint() * st.d_theta;
        Gap = st.a.adjoint() * st.d_phi;
        Gat = st.a.adjoint() * st.d_theta;
        Gpa = st.d_phi.adjoint() * st.a;
        Gta = st.d_theta.adjoint() * st.a;
    }

    Eigen::VectorXcd alpha(L);
    for (int l = 0; l < L; ++l) alpha(l) = paths.paths[l].alpha;

    const int D = fim.dim();
    Eigen::MatrixXd& I = fim.matrix;
    I.setZero(D, D);
    const double scale = 2.0 / noise_var;

    // Derivatives of the noiseless mean with respect to the parameters of
    // path l, at antenna m and sample n:
    //   d/dtau_l    = -alpha_l a_m(l) s_dot(t_n - tau_l)
    //   d/dphi_l    =  alpha_l a_dot_phi_m(l) s(t_n - tau_l)
    //   d/dtheta_l  =  alpha_l a_dot_theta_m(l) s(t_n - tau_l)
    //   d/dalphaR_l =  a_m(l) s(t_n - tau_l)
    //   d/dalphaI_l =  j a_m(l) s(t_n - tau_l)
    // Every matrix element is Re{ conj(d_u) d_v } summed over (m, n), which
    // factors into an antenna Gram times a delay Gram.
    for (int l = 0; l < L; ++l) {
        for (int lp = 0; lp < L; ++lp) {
            const std::complex<double> cc = std::conj(alpha(l)) * alpha(lp);
            const std::complex<double> cl = std::conj(alpha(l));

            if (lp >= l) {
                I(fim.tau_index(l), fim.tau_index(lp)) =
                    scale * std::real(cc * Gaa(l, lp)) * Sdd(l, lp);
                I(fim.alpha_re_index(l), fim.alpha_re_index(lp)) =
                    scale * std::real(Gaa(l, lp)) * Sss(l, lp);
                I(fim.alpha_im_index(l), fim.alpha_im_index(lp)) =
                    scale * std::real(Gaa(l, lp)) * Sss(l, lp);
            }
            I(fim.tau_index(l), fim.alpha_re_index(lp)) =
                -scale * std::real(cl * Gaa(l, lp)) * Sds(l, lp);
            I(fim.tau_index(l), fim.alpha_im_index(lp)) =
                scale * std::imag(cl * Gaa(l, lp)) * Sds(l, lp);
            I(fim.alpha_re_index(l), fim.alpha_im_index(lp)) =
                -scale * std::imag(Gaa(l, lp)) * Sss(l, lp);

            if (!fim.siso) {
                if (lp >= l) {
                    I(fim.phi_index(l), fim.phi_index(lp)) =
                        scale * std::real(cc * Gpp(l, lp)) * Sss(l, lp);
                    I(fim.theta_index(l), fim.theta_index(lp)) =
                        scale * std::real(cc * Gtt(l, lp)) * Sss(l, lp);
                }
                I(fim.tau_index(l), fim.phi_index(lp)) =
                    -scale * std::real(cc * Gap(l, lp)) * Sds(l, lp);
                I(fim.tau_index(l), fim.theta_index(lp)) =
                    -scale * std::real(cc * Gat(l, lp)) * Sds(l, lp);
                I(fim.phi_index(l), fim.theta_index(lp)) =
                    scale * std::real(cc * Gpt(l, lp)) * Sss(l, lp);
                I(fim.phi_index(l), fim.alpha_re_index(lp)) =
                    scale * std::real(cl * Gpa(l, lp)) * Sss(l, lp);
                I(fim.phi_index(l), fim.alpha_im_index(lp)) =
                    -scale * std::imag(cl * Gpa(l, lp)) * Sss(l, lp);
                I(fim.theta_index(l), fim.alpha_re_index(lp)) =
                    scale * std::real(cl * Gta(l, lp)) * Sss(l, lp);
                I(fim.theta_index(l), fim.alpha_im_index(lp)) =
                    -scale * std::imag(cl * Gta(l, lp)) * Sss(l, lp);
            }
        }
    }

    // The loops above fill the upper triangle only; mirror down.
    for (int r = 0; r < D; ++r)
        for (int c = r + 1; c < D; ++c) I(c, r) = I(r, c);

    return fim;
}

}  // namespace chanex
