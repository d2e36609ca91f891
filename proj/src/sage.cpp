// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/sage.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "chanex/parallel.hpp"
#include "chanex/pathset_io.hpp"

namespace chanex {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

struct Candidate {
    double tau = 0.0, phi = 0.0, theta = kPi / 2.0;
    double score = -1.0;                 // |a^H y|^2 / (M ||s_tau||^2)
    std::complex<double> alpha{0.0, 0.0};  // least-squares gain at the optimum
};

// Precomputed search grids shared by all M-steps of one extraction.
struct SearchGrids {
    std::vector<double> taus;
    Eigen::MatrixXd s_grid;        // N x Ntau sampled pulse replicas
    Eigen::VectorXd energy;        // ||s_tau||^2 per grid delay
    std::vector<double> phis, thetas;
    Eigen::MatrixXcd a_grid;       // M x (Nphi * Ntheta), theta-major per phi
    double tau_lo = 0.0, tau_hi = 0.0;
    double delay_step = 0.0, phi_step = 0.0, theta_step = 0.0;
    bool siso = false;
};

SearchGrids build_grids(const ArrayGeometry& array, const TrainingPulse& pulse,
                        const SageConfig& cfg) {
    SearchGrids g;
    g.siso = array.is_siso();

    g.delay_step = cfg.delay_step > 0.0 ? cfg.delay_step : pulse.sample_period() / 4.0;
    g.tau_lo = cfg.delay_min;
    g.tau_hi = cfg.delay_max >= 0.0 ? cfg.delay_max : pulse.window_end() - 8.0 * pulse.T;
    if (!(g.tau_hi > g.tau_lo))
        throw std::invalid_argument("sage: degenerate delay search range");
    const int n_tau = static_cast<int>(std::floor((g.tau_hi - g.tau_lo) / g.delay_step)) + 1;

    g.taus.resize(n_tau);
    g.s_grid.resize(pulse.N, n_tau);
    g.energy.resize(n_tau);
    const bool par = parallel::enabled();
#pragma omp parallel for schedule(static) if (par)
    for (int ti = 0; ti < n_tau; ++ti) {
        const double tau = g.tau_lo + ti * g.delay_step;
        g.taus[ti] = tau;
        double e = 0.0;
        for (int n = 0; n < pulse.N; ++n) {
            const double s = rrc_value(pulse, pulse.sample_time(n) - tau);
            g.s_grid(n, ti) = s;
            e += s * s;
        }
        g.energy(ti) = std::max(e, 1e-300);
    }

    if (g.siso) {
        g.phis = {0.0};
        g.thetas = {kPi / 2.0};
        g.a_grid = Eigen::MatrixXcd::Ones(1, 1);
        return g;
    }

    // Aperture-derived angle steps: fine enough that the true peak lies within
    // one coarse cell of the sampled beam pattern.
    const Eigen::Vector3d lo = array.positions.rowwise().minCoeff();
    const Eigen::Vector3d hi = array.positions.rowwise().maxCoeff();
    const double ext_x = std::max(hi(0) - lo(0), array.wavelength);
    const double ext_z = std::max(hi(2) - lo(2), array.wavelength);
    g.phi_step = cfg.angle_step > 0.0
                     ? cfg.angle_step
                     : 2.0 * kPi / (16.0 * ext_x / array.wavelength);
    g.theta_step = cfg.angle_step > 0.0
                       ? cfg.angle_step
                       : 2.0 * kPi / (16.0 * ext_z / array.wavelength);

    for (double p = -kPi + g.phi_step / 2.0; p <= kPi; p += g.phi_step) g.phis.push_back(p);
    for (double t = 0.0; t <= kPi + 1e-12; t += g.theta_step)
        g.thetas.push_back(std::min(t, kPi));

    const int n_ang = static_cast<int>(g.phis.size() * g.thetas.size());
    g.a_grid.resize(array.size(), n_ang);
    int col = 0;
    for (double p : g.phis)
        for (double t : g.thetas) g.a_grid.col(col++) = steering_vector(array, p, t);
    return g;
}

// Matched-filter objective of a single candidate against data x (M x N):
// score = |a^H y|^2 / (M ||s_tau||^2) with y_m = sum_n x_mn s(t_n - tau).
// The maximizing closed-form gain is a^H y / (M ||s_tau||^2).
Candidate evaluate_candidate(const Eigen::MatrixXcd& x, const ArrayGeometry& array,
                             const TrainingPulse& pulse, double tau, double phi,
                             double theta, bool siso) {
    const int N = pulse.N;
    Eigen::VectorXd s(N);
    double e = 0.0;
    for (int n = 0; n < N; ++n) {
        s(n) = rrc_value(pulse, pulse.sample_time(n) - tau);
        e += s(n) * s(n);
    }
    e = std::max(e, 1e-300);
    const Eigen::VectorXcd y = x * s;
    std::complex<double> z;
    if (siso) {
        z = y(0);
    } else {
        const Eigen::VectorXcd a = steering_vector(array, phi, theta);
        z = a.dot(y);
    }
    const double denom = array.size() * e;
    Candidate c;
    c.tau = tau;
    c.phi = phi;
    c.theta = theta;
    c.score = std::norm(z) / denom;
    c.alpha = z / denom;
    return c;
}

// Full coarse grid scan. Parallel over delay bins; each bin's best is reduced
// serially in index order, so the winner does not depend on thread count.
Candidate grid_search(const Eigen::MatrixXcd& x, const SearchGrids& g) {
    const int n_tau = static_cast<int>(g.taus.size());
    const int n_theta = static_cast<int>(g.thetas.size());
    const Eigen::MatrixXcd y_grid = x * g.s_grid;  // M x Ntau matched filters

    std::vector<double> best_score(n_tau, -1.0);
    std::vector<int> best_angle(n_tau, 0);
    const bool par = parallel::enabled();
#pragma omp parallel for schedule(static) if (par)
    for (int ti = 0; ti < n_tau; ++ti) {
        const Eigen::VectorXcd scores = g.a_grid.adjoint() * y_grid.col(ti);
        double s_best = -1.0;
        int a_best = 0;
        for (int ai = 0; ai < scores.size(); ++ai) {
            const double s = std::norm(scores(ai));
            if (s > s_best) {
                s_best = s;
                a_best = ai;
            }
        }
        best_score[ti] = s_best / (g.a_grid.rows() * g.energy(ti));
        best_angle[ti] = a_best;
    }

    int ti_best = 0;
    for (int ti = 1; ti < n_tau; ++ti)
        if (best_score[ti] > best_score[ti_best]) ti_best = ti;

    Candidate c;
    c.tau = g.taus[ti_best];
    c.phi = g.phis[best_angle[ti_best] / n_theta];
    c.theta = g.thetas[best_angle[ti_best] % n_theta];
    c.score = best_score[ti_best];
    return c;
}

// Dyadic pattern refinement around a start point. Every level evaluates the
// 3^3 (or 3 in the single-antenna case) neighborhood at the current step
// sizes and keeps the best point; steps halve each level.
Candidate refine(const Eigen::MatrixXcd& x, const ArrayGeometry& array,
                 const TrainingPulse& pulse, const SearchGrids& g, Candidate start,
                 int refine_steps) {
    Candidate best =
        evaluate_candidate(x, array, pulse, start.tau, start.phi, start.theta, g.siso);
    double d_tau = g.delay_step;
    double d_phi = g.phi_step;
    double d_theta = g.theta_step;
    for (int level = 0; level < refine_steps; ++level) {
        Candidate level_best = best;
        for (int it = -1; it <= 1; ++it) {
            const double tau = std::clamp(best.tau + it * d_tau, g.tau_lo, g.tau_hi);
            if (g.siso) {
                const Candidate c =
                    evaluate_candidate(x, array, pulse, tau, best.phi, best.theta, true);
                if (c.score > level_best.score) level_best = c;
                continue;
            }
            for (int ip = -1; ip <= 1; ++ip) {
                const double phi = wrap_angle(best.phi + ip * d_phi);
                for (int iq = -1; iq <= 1; ++iq) {
                    const double theta = std::clamp(best.theta + iq * d_theta, 0.0, kPi);
                    const Candidate c =
                        evaluate_candidate(x, array, pulse, tau, phi, theta, false);
                    if (c.score > level_best.score) level_best = c;
                }
            }
        }
        best = level_best;
        d_tau /= 2.0;
        d_phi /= 2.0;
        d_theta /= 2.0;
    }
    return best;
}

Eigen::MatrixXcd reconstruction(const ArrayGeometry& array, const TrainingPulse& pulse,
                                const Candidate& c, bool siso) {
    const Eigen::VectorXcd a =
        siso ? Eigen::VectorXcd::Ones(1).eval() : steering_vector(array, c.phi, c.theta);
    Eigen::VectorXd s(pulse.N);
    for (int n = 0; n < pulse.N; ++n) s(n) = rrc_value(pulse, pulse.sample_time(n) - c.tau);
    return (c.alpha * a) * s.transpose();
}

}  // namespace

EstimationResult sage_extract(const ReceivedBlock& block, const ArrayGeometry& array,
                              const TrainingPulse& pulse, const SageConfig& config) {
    if (config.L_target < 1 || config.L_target > config.l_cap)
        throw std::invalid_argument("sage: L_target out of range");
    if (block.samples.rows() != array.size() || block.samples.cols() != pulse.N)
        throw std::invalid_argument("sage: block dimensions do not match array/pulse");

    const SearchGrids grids = build_grids(array, pulse, config);
    const bool siso = grids.siso;
    const int L = config.L_target;

    // Successive cancellation initialization, strongest path first.
    std::vector<Candidate> paths(L);
    std::vector<Eigen::MatrixXcd> recon(L);
    Eigen::MatrixXcd residual = block.samples;
    for (int l = 0; l < L; ++l) {
        Candidate c = grid_search(residual, grids);
        c = refine(residual, array, pulse, grids, c, config.refine_steps);
        paths[l] = c;
        recon[l] = reconstruction(array, pulse, c, siso);
        residual -= recon[l];
    }

    // Space-alternating refinement sweeps.
    EstimationResult result;
    result.converged = false;
    int sweeps = 0;
    for (; sweeps < config.max_iterations; ++sweeps) {
        double max_change = 0.0;
        for (int l = 0; l < L; ++l) {
            const Eigen::MatrixXcd x = residual + recon[l];
            Candidate c = grid_search(x, grids);
            c = refine(x, array, pulse, grids, c, config.refine_steps);
            // Keep the previous parameters when the fresh search cannot beat
            // them; this makes the residual energy non-increasing.
            const Candidate prev = evaluate_candidate(x, array, pulse, paths[l].tau,
                                                      paths[l].phi, paths[l].theta, siso);
            if (prev.score >= c.score) c = prev;

            const double change = std::max(
                {std::abs(c.tau - paths[l].tau) / pulse.T, std::abs(c.phi - paths[l].phi),
                 std::abs(c.theta - paths[l].theta),
                 std::abs(c.alpha - paths[l].alpha) /
                     std::max(std::abs(c.alpha), 1e-300)});
            max_change = std::max(max_change, change);

            paths[l] = c;
            recon[l] = reconstruction(array, pulse, c, siso);
            residual = x - recon[l];
        }
        result.sweep_residuals.push_back(residual.squaredNorm());
        if (max_change < config.tol) {
            result.converged = true;
            ++sweeps;
            break;
        }
    }

    result.iterations_used = sweeps;
    result.residual_energy = residual.squaredNorm();
    result.paths.paths.reserve(L);
    for (const auto& c : paths) {
        PathParams p;
        p.alpha = c.alpha;
        p.tau = c.tau;
        p.phi = siso ? 0.0 : c.phi;
        p.theta = siso ? kPi / 2.0 : c.theta;
        result.paths.paths.push_back(p);
    }
    return result;
}

void EstimationResult::save(const std::string& pathset_csv,
                            const std::string& diagnostics_csv) const {
    save_pathset_csv(paths, pathset_csv);
    std::FILE* f = std::fopen(diagnostics_csv.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + diagnostics_csv);
    std::fprintf(f, "iterations_used,residual_energy,converged\n");
    std::fprintf(f, "%d,%.17g,%d\n", iterations_used, residual_energy, converged ? 1 : 0);
    std::fclose(f);
}

}  // namespace chanex
