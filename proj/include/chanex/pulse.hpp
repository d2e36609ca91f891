// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <complex>

namespace chanex {

/// Root-raised-cosine training pulse together with the sampling window the
/// receiver observes. Sample n sits at absolute time
///   t_n = time_origin + n * T / K,
/// so the pulse transmitted at delay 0 peaks at t = 0. The default origin
/// puts that peak at 25% of the window, leaving room for the acausal tail in
/// front and the channel delay spread behind.
struct TrainingPulse {
    double beta = 0.2;    ///< roll-off factor in [0, 1]
    double T = 50e-9;     ///< symbol period (seconds); bandwidth is 1/T
    int K = 2;            ///< integer oversampling factor, K >= 1 + beta
    int N = 256;          ///< number of observation samples
    double time_origin = 0.0;  ///< absolute time of sample n = 0 (seconds)

    double sample_period() const { return T / K; }
    double sample_time(int n) const { return time_origin + n * sample_period(); }
    double window_end() const { return sample_time(N); }
    /// Observation length in symbol periods.
    double symbols() const { return static_cast<double>(N) / K; }

    /// Throws std::invalid_argument on a malformed descriptor
    /// (K < 1 + beta would alias the excess band).
    void validate() const;

    /// Builds a pulse with `window_symbols` symbol periods of observation and
    /// the default 25% origin rule.
    static TrainingPulse make(double beta, double T, int K, double window_symbols);
};

/// Window length (in symbol periods) that covers a delay spread of
/// `spread_symbols` symbols with the default margins: 8 T of acausal tail in
/// front of the earliest path and 24 T behind the latest one.
double auto_window_symbols(double spread_symbols);

/// Time-domain RRC value at time t (unit-energy continuous-time shape).
/// The removable singularities at t = 0 and |t| = T/(4 beta) are evaluated
/// through local series expansions.
double rrc_value(const TrainingPulse& pulse, double t);

/// Analytic time derivative of rrc_value.
double rrc_derivative(const TrainingPulse& pulse, double t);

/// Energy of the sampled pulse over the observation window,
/// sum_n s(t_n)^2. This is the ||s||^2 entering the SNR definition.
double pulse_energy(const TrainingPulse& pulse);

/// Root mean squared bandwidth sigma_F (Hz) of the sampled pulse, computed
/// from the time-domain identity ||s_dot||^2 / ((2 pi)^2 ||s||^2).
double mean_squared_bandwidth(const TrainingPulse& pulse);

/// Discrete-time Fourier transform of the sampled pulse at frequency f,
/// sum_n s(t_n) exp(-j 2 pi f t_n). In the flat part of the band
/// |S(f)|^2 approaches ||s||^2 K; beyond (1+beta)/(2T) only truncation
/// leakage remains.
std::complex<double> pulse_spectrum(const TrainingPulse& pulse, double f);

/// Band-edge frequency (1 + beta) / (2 T) beyond which the spectrum is zero
/// up to leakage.
double cutoff_frequency(const TrainingPulse& pulse);

}  // namespace chanex
