// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chanex/channel.hpp"
#include "chanex/parallel.hpp"

namespace chanex {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd gradient_from_steering(const PathSet& paths, const SteeringSet& st, int m,
                                        double f, bool siso) {
    const int L = paths.size();
    Eigen::VectorXcd g(siso ? 3 * L : 5 * L);
    const std::complex<double> jw{0.0, -2.0 * kPi * f};
    for (int l = 0; l < L; ++l) {
        const auto& p = paths.paths[l];
        const std::complex<double> rot = std::polar(1.0, -2.0 * kPi * f * p.tau);
        if (siso) {
            g(l) = jw * p.alpha * rot;
            g(L + l) = rot;
            g(2 * L + l) = std::complex<double>{0.0, 1.0} * rot;
        } else {
            g(l) = jw * p.alpha * rot * st.a(m, l);
            g(L + l) = p.alpha * rot * st.d_phi(m, l);
            g(2 * L + l) = p.alpha * rot * st.d_theta(m, l);
            g(3 * L + l) = rot * st.a(m, l);
            g(4 * L + l) = std::complex<double>{0.0, 1.0} * rot * st.a(m, l);
        }
    }
    return g;
}

}  // namespace

Eigen::VectorXcd extrapolation_gradient(const PathSet& paths, const ArrayGeometry& array,
                                        int m, double f) {
    if (m < 0 || m >= array.size())
        throw std::invalid_argument("extrapolation_gradient: antenna index out of range");
    const SteeringSet st = build_steering_set(array, paths);
    return gradient_from_steering(paths, st, m, f, array.is_siso());
}

FullLbResult full_lower_bound(const PathSet& paths, const ArrayGeometry& array,
                              const TrainingPulse& pulse, double noise_var,
                              const std::vector<double>& freqs, const LbOptions& options) {
    const FisherMatrix fim = build_fisher(paths, array, pulse, noise_var);
    const int D = fim.dim();
    const int M = array.size();
    const int F = static_cast<int>(freqs.size());

    FullLbResult out;
    out.freqs = freqs;

    // Symmetric diagonal equilibration. The raw information matrix scales
    // like |alpha_l|^2 on the delay and angle rows, so a single weak path
    // drives the raw condition number through the roof even when the
    // underlying geometry is healthy. Equilibration removes that scaling and
    // leaves the genuine cross-path correlation structure.
    Eigen::VectorXd d(D);
    for (int i = 0; i < D; ++i) {
        const double v = fim.matrix(i, i);
        d(i) = v > 0.0 ? std::sqrt(v) : 1.0;
    }
    Eigen::MatrixXd eq(D, D);
    for (int r = 0; r < D; ++r)
        for (int c = 0; c < D; ++c) eq(r, c) = fim.matrix(r, c) / (d(r) * d(c));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eq);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("full_lower_bound: eigendecomposition failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double ev_max = ev(D - 1);
    out.condition_number =
        ev(0) > 0.0 ? ev_max / ev(0) : std::numeric_limits<double>::infinity();

    const bool ill = !(out.condition_number <= options.cond_limit);
    if (ill && !options.eigen_floor) {
        // Rank-deficient information: the bound is unbounded along the null
        // directions. Callers can merge nearly coincident paths and retry, or
        // request the floored solve explicitly.
        out.singular = true;
        return out;
    }
    if (F == 0) return out;

    const SteeringSet st = build_steering_set(array, paths);
    out.per_antenna.resize(M, F);
    out.values.assign(F, 0.0);

    const bool use_floor = options.eigen_floor && ill;
    Eigen::VectorXd ev_floored;
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
    if (use_floor) {
        ev_floored = ev.cwiseMax(ev_max * options.floor_rel);
    } else {
        ldlt.compute(eq);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("full_lower_bound: factorization failed");
    }

    const bool par = parallel::enabled();
#pragma omp parallel for schedule(static) if (par)
    for (int fi = 0; fi < F; ++fi) {
        for (int m = 0; m < M; ++m) {
            Eigen::VectorXcd g = gradient_from_steering(paths, st, m, freqs[fi], fim.siso);
            for (int i = 0; i < D; ++i) g(i) /= d(i);
            const Eigen::VectorXd gr = g.real();
            const Eigen::VectorXd gi = g.imag();
            double lb;
            if (use_floor) {
                const Eigen::VectorXd yr = es.eigenvectors().transpose() * gr;
                const Eigen::VectorXd yi = es.eigenvectors().transpose() * gi;
                lb = ((yr.array().square() + yi.array().square()) / ev_floored.array()).sum();
            } else {
                lb = gr.dot(ldlt.solve(gr)) + gi.dot(ldlt.solve(gi));
            }
            out.per_antenna(m, fi) = lb;
        }
        out.values[fi] = out.per_antenna.col(fi).mean();
    }
    return out;
}

double simplified_lower_bound_simo(int L, int M, double snr, double f, double sigma_f) {
    if (L < 1 || M < 1 || snr <= 0.0 || sigma_f <= 0.0)
        throw std::invalid_argument("simplified_lower_bound_simo: inputs must be positive");
    const double x = f / sigma_f;
    return (static_cast<double>(L) / M) / snr * (2.0 + 0.5 * x * x);
}

double simplified_lower_bound_siso(int L, double snr, double f, double sigma_f) {
    if (L < 1 || snr <= 0.0 || sigma_f <= 0.0)
        throw std::invalid_argument("simplified_lower_bound_siso: inputs must be positive");
    const double x = f / sigma_f;
    return (static_cast<double>(L) / snr) * (1.0 + 0.5 * x * x);
}

SeparationReport separation_report(const PathSet& paths, const ArrayGeometry& array,
                                   const TrainingPulse& pulse) {
    const int L = paths.size();
    const int M = array.size();
    const bool siso = (M == 1);

    const detail::DelaySamples ds = detail::build_delay_samples(paths, pulse);
    const SteeringSet st = build_steering_set(array, paths);

    auto norm_of = [](const Eigen::VectorXd& v) { return std::max(v.norm(), 1e-300); };
    auto cnorm_of = [](const Eigen::VectorXcd& v) { return std::max(v.norm(), 1e-300); };

    SeparationReport rep;
    rep.as3_phi.resize(L);
    rep.as3_theta.resize(L);
    for (int l = 0; l < L; ++l) {
        if (siso) {
            rep.as3_phi[l] = 0.0;
            rep.as3_theta[l] = 0.0;
        } else {
            rep.as3_phi[l] = std::abs(st.d_phi.col(l).dot(st.a.col(l))) /
                             (cnorm_of(st.d_phi.col(l)) * cnorm_of(st.a.col(l)));
            rep.as3_theta[l] = std::abs(st.d_theta.col(l).dot(st.a.col(l))) /
                               (cnorm_of(st.d_theta.col(l)) * cnorm_of(st.a.col(l)));
        }
    }

    for (int l = 0; l < L; ++l) {
        for (int lp = l + 1; lp < L; ++lp) {
            PairSeparation p;
            p.l = l;
            p.l_prime = lp;
            p.s_s = std::abs(ds.s.col(l).dot(ds.s.col(lp))) /
                    (norm_of(ds.s.col(l)) * norm_of(ds.s.col(lp)));
            p.sdot_sdot = std::abs(ds.s_dot.col(l).dot(ds.s_dot.col(lp))) /
                          (norm_of(ds.s_dot.col(l)) * norm_of(ds.s_dot.col(lp)));
            p.sdot_s = std::abs(ds.s_dot.col(l).dot(ds.s.col(lp))) /
                       (norm_of(ds.s_dot.col(l)) * norm_of(ds.s.col(lp)));
            p.delay_max = std::max({p.s_s, p.sdot_sdot, p.sdot_s});
            if (!siso) {
                p.a_a = std::abs(st.a.col(l).dot(st.a.col(lp))) /
                        (cnorm_of(st.a.col(l)) * cnorm_of(st.a.col(lp)));
                p.dphi_dphi = std::abs(st.d_phi.col(l).dot(st.d_phi.col(lp))) /
                              (cnorm_of(st.d_phi.col(l)) * cnorm_of(st.d_phi.col(lp)));
                p.dtheta_dtheta = std::abs(st.d_theta.col(l).dot(st.d_theta.col(lp))) /
                                  (cnorm_of(st.d_theta.col(l)) * cnorm_of(st.d_theta.col(lp)));
                p.dphi_a = std::abs(st.d_phi.col(l).dot(st.a.col(lp))) /
                           (cnorm_of(st.d_phi.col(l)) * cnorm_of(st.a.col(lp)));
                p.dtheta_a = std::abs(st.d_theta.col(l).dot(st.a.col(lp))) /
                             (cnorm_of(st.d_theta.col(l)) * cnorm_of(st.a.col(lp)));
                p.dphi_dtheta = std::abs(st.d_phi.col(l).dot(st.d_theta.col(lp))) /
                                (cnorm_of(st.d_phi.col(l)) * cnorm_of(st.d_theta.col(lp)));
                p.angle_max = std::max({p.a_a, p.dphi_dphi, p.dtheta_dtheta, p.dphi_a,
                                        p.dtheta_a, p.dphi_dtheta});
            }
            const double pair_residual = siso ? p.delay_max : std::min(p.delay_max, p.angle_max);
            rep.headline = std::max(rep.headline, pair_residual);
            rep.pairs.push_back(p);
        }
    }

    // Condition number is scale invariant; a unit noise variance serves.
    LbOptions opts;
    opts.cond_limit = std::numeric_limits<double>::infinity();
    const FullLbResult r = full_lower_bound(paths, array, pulse, 1.0, {}, opts);
    rep.fisher_condition_number = r.condition_number;
    return rep;
}

void SeparationReport::write_csv(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + path);
    std::fprintf(f, "l,l_prime,metric,value\n");
    auto row = [f](int l, int lp, const char* metric, double v) {
        std::fprintf(f, "%d,%d,%s,%.17g\n", l, lp, metric, v);
    };
    for (const auto& p : pairs) {
        row(p.l, p.l_prime, "delay_s_s", p.s_s);
        row(p.l, p.l_prime, "delay_sdot_sdot", p.sdot_sdot);
        row(p.l, p.l_prime, "delay_sdot_s", p.sdot_s);
        row(p.l, p.l_prime, "angle_a_a", p.a_a);
        row(p.l, p.l_prime, "angle_dphi_dphi", p.dphi_dphi);
        row(p.l, p.l_prime, "angle_dtheta_dtheta", p.dtheta_dtheta);
        row(p.l, p.l_prime, "angle_dphi_a", p.dphi_a);
        row(p.l, p.l_prime, "angle_dtheta_a", p.dtheta_a);
        row(p.l, p.l_prime, "angle_dphi_dtheta", p.dphi_dtheta);
    }
    for (std::size_t l = 0; l < as3_phi.size(); ++l) {
        row(static_cast<int>(l), static_cast<int>(l), "as3_phi", as3_phi[l]);
        row(static_cast<int>(l), static_cast<int>(l), "as3_theta", as3_theta[l]);
    }
    std::fprintf(f, "-1,-1,fisher_condition_number,%.17g\n", fisher_condition_number);
    std::fprintf(f, "-1,-1,headline,%.17g\n", headline);
    std::fclose(f);
}

}  // namespace chanex
