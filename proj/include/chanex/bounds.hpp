// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chanex/array_geometry.hpp"
#include "chanex/fisher.hpp"
#include "chanex/path_set.hpp"
#include "chanex/pulse.hpp"

namespace chanex {

/// Gradient of the extrapolated channel H_m(f) with respect to the real path
/// parameter vector, in the FisherMatrix ordering. Projecting the inverse
/// information matrix onto this vector yields the per-antenna lower bound.
Eigen::VectorXcd extrapolation_gradient(const PathSet& paths, const ArrayGeometry& array,
                                        int m, double f);

struct LbOptions {
    /// Condition-number limit (on the diagonally equilibrated information
    /// matrix) beyond which the bound is flagged singular.
    double cond_limit = 1e12;
    /// Explicit fallback: solve through the eigendecomposition with
    /// eigenvalues floored at floor_rel times the largest one. Keeps
    /// near-singular bounds finite, positive and order-of-magnitude faithful
    /// instead of failing; off by default because it alters the values.
    bool eigen_floor = false;
    double floor_rel = 1e-15;
};

/// Antenna-averaged lower bound on the MSE of the extrapolated channel,
/// evaluated on a frequency grid.
struct FullLbResult {
    std::vector<double> freqs;     ///< baseband offsets (Hz)
    std::vector<double> values;    ///< averaged bound per frequency
    Eigen::MatrixXd per_antenna;   ///< M x F per-antenna bounds
    double condition_number = 0.0;  ///< of the equilibrated information matrix
    bool singular = false;          ///< cond_limit exceeded and no fallback requested
};

/// Evaluates g^H I^{-1} g per antenna and frequency through one shared
/// factorization (never an explicit inverse), then averages over antennas.
/// The information matrix is diagonally equilibrated before factorization so
/// that weak-gain paths do not poison the scaling.
FullLbResult full_lower_bound(const PathSet& paths, const ArrayGeometry& array,
                              const TrainingPulse& pulse, double noise_var,
                              const std::vector<double>& freqs, const LbOptions& options = {});

/// Closed-form bound for well separated rays, antenna averaged:
/// (1/snr) (L/M) (2 + (f / sigma_f)^2 / 2).
double simplified_lower_bound_simo(int L, int M, double snr, double f, double sigma_f);

/// Closed-form single-antenna bound: (L/snr) (1 + (f / sigma_f)^2 / 2).
double simplified_lower_bound_siso(int L, double snr, double f, double sigma_f);

/// Normalized cross-coupling diagnostics between every pair of rays, in the
/// delay domain (pulse replicas) and the angle domain (steering responses).
/// Values near zero mean the pair is separated in that domain.
struct PairSeparation {
    int l = 0, l_prime = 0;
    double s_s = 0, sdot_sdot = 0, sdot_s = 0;             // delay domain
    double a_a = 0, dphi_dphi = 0, dtheta_dtheta = 0;      // angle domain
    double dphi_a = 0, dtheta_a = 0, dphi_dtheta = 0;      // angle cross terms
    double delay_max = 0;   ///< worst delay-domain cross term of the pair
    double angle_max = 0;   ///< worst angle-domain cross term of the pair
};

struct SeparationReport {
    std::vector<PairSeparation> pairs;
    std::vector<double> as3_phi;    ///< per-path |a_dot_phi^H a| residual, normalized
    std::vector<double> as3_theta;  ///< per-path |a_dot_theta^H a| residual, normalized
    double fisher_condition_number = 0.0;
    /// Worst pair coupling: max over pairs of the smaller of the two domain
    /// residuals (a pair only needs separation in one domain). Single-antenna
    /// reports use the delay residual alone.
    double headline = 0.0;

    /// Long-format table: pair,l,l_prime,metric,value plus per-path rows.
    void write_csv(const std::string& path) const;
};

SeparationReport separation_report(const PathSet& paths, const ArrayGeometry& array,
                                   const TrainingPulse& pulse);

}  // namespace chanex
