// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chanex {

namespace {

constexpr double kPi = std::numbers::pi;

// Dimensionless RRC shape g(u) with s(t) = g(t/T) / sqrt(T),
//   g(u) = [sin(pi u (1-b)) + 4 b u cos(pi u (1+b))] / [pi u (1 - 16 b^2 u^2)].
// Direct evaluation is stable except at u = 0 (0/0) and near |u| = 1/(4b)
// where numerator and denominator both vanish and cancel catastrophically;
// those neighbourhoods use series expansions of numerator and denominator.

constexpr double kSeriesWindow = 1e-3;

struct ShapeCoeffs {
    double a, b;              // pi (1 - beta), pi (1 + beta)
    double m1, m3, m5;        // odd Taylor coefficients of the numerator at 0
};

ShapeCoeffs coeffs(double beta) {
    ShapeCoeffs c;
    c.a = kPi * (1.0 - beta);
    c.b = kPi * (1.0 + beta);
    c.m1 = c.a + 4.0 * beta;
    c.m3 = -c.a * c.a * c.a - 12.0 * beta * c.b * c.b;
    c.m5 = std::pow(c.a, 5) + 20.0 * beta * std::pow(c.b, 4);
    return c;
}

double numer(double u, double beta, const ShapeCoeffs& c) {
    return std::sin(c.a * u) + 4.0 * beta * u * std::cos(c.b * u);
}
double numer_d1(double u, double beta, const ShapeCoeffs& c) {
    return c.a * std::cos(c.a * u) + 4.0 * beta * std::cos(c.b * u) -
           4.0 * beta * c.b * u * std::sin(c.b * u);
}
double numer_d2(double u, double beta, const ShapeCoeffs& c) {
    return -c.a * c.a * std::sin(c.a * u) - 8.0 * beta * c.b * std::sin(c.b * u) -
           4.0 * beta * c.b * c.b * u * std::cos(c.b * u);
}
double numer_d3(double u, double beta, const ShapeCoeffs& c) {
    return -std::pow(c.a, 3) * std::cos(c.a * u) -
           12.0 * beta * c.b * c.b * std::cos(c.b * u) +
           4.0 * beta * std::pow(c.b, 3) * u * std::sin(c.b * u);
}
double denom(double u, double beta) {
    return kPi * u * (1.0 - 16.0 * beta * beta * u * u);
}
double denom_d1(double u, double beta) {
    return kPi - 48.0 * kPi * beta * beta * u * u;
}

// g(u) for u >= 0.
double shape(double u, double beta, const ShapeCoeffs& c) {
    if (u < kSeriesWindow) {
        // numerator = m1 u + m3 u^3/6 + m5 u^5/120 + O(u^7)
        const double n = c.m1 + c.m3 * u * u / 6.0 + c.m5 * std::pow(u, 4) / 120.0;
        const double d = kPi * (1.0 - 16.0 * beta * beta * u * u);
        return n / d;
    }
    if (beta > 0.0) {
        const double u0 = 1.0 / (4.0 * beta);
        const double dl = u - u0;
        if (std::abs(dl) < kSeriesWindow) {
            // Both numerator and denominator vanish linearly at u0; divide the
            // common factor out of cubic Taylor expansions.
            const double n1 = numer_d1(u0, beta, c);
            const double n2 = numer_d2(u0, beta, c);
            const double n3 = numer_d3(u0, beta, c);
            const double d1 = denom_d1(u0, beta);
            const double d2 = -96.0 * kPi * beta * beta * u0;
            const double d3 = -96.0 * kPi * beta * beta;
            const double n = n1 + n2 * dl / 2.0 + n3 * dl * dl / 6.0;
            const double d = d1 + d2 * dl / 2.0 + d3 * dl * dl / 6.0;
            return n / d;
        }
    }
    return numer(u, beta, c) / denom(u, beta);
}

// g'(u) for u >= 0.
double shape_deriv(double u, double beta, const ShapeCoeffs& c) {
    if (u < kSeriesWindow) {
        const double n = c.m1 + c.m3 * u * u / 6.0 + c.m5 * std::pow(u, 4) / 120.0;
        const double np = c.m3 * u / 3.0 + c.m5 * u * u * u / 30.0;
        const double d = kPi * (1.0 - 16.0 * beta * beta * u * u);
        const double dp = -32.0 * kPi * beta * beta * u;
        return (np * d - n * dp) / (d * d);
    }
    if (beta > 0.0) {
        const double u0 = 1.0 / (4.0 * beta);
        const double dl = u - u0;
        if (std::abs(dl) < kSeriesWindow) {
            const double n1 = numer_d1(u0, beta, c);
            const double n2 = numer_d2(u0, beta, c);
            const double n3 = numer_d3(u0, beta, c);
            const double d1 = denom_d1(u0, beta);
            const double d2 = -96.0 * kPi * beta * beta * u0;
            const double d3 = -96.0 * kPi * beta * beta;
            const double n = n1 + n2 * dl / 2.0 + n3 * dl * dl / 6.0;
            const double np = n2 / 2.0 + n3 * dl / 3.0;
            const double d = d1 + d2 * dl / 2.0 + d3 * dl * dl / 6.0;
            const double dp = d2 / 2.0 + d3 * dl / 3.0;
            return (np * d - n * dp) / (d * d);
        }
    }
    const double n = numer(u, beta, c);
    const double np = numer_d1(u, beta, c);
    const double d = denom(u, beta);
    const double dp = denom_d1(u, beta);
    return (np * d - n * dp) / (d * d);
}

}  // namespace

void TrainingPulse::validate() const {
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("pulse: beta must be in [0, 1]");
    if (T <= 0.0) throw std::invalid_argument("pulse: symbol period must be positive");
    if (K < 1 || static_cast<double>(K) < 1.0 + beta)
        throw std::invalid_argument("pulse: oversampling factor must satisfy K >= 1 + beta");
    if (N < 1) throw std::invalid_argument("pulse: sample count must be positive");
}

TrainingPulse TrainingPulse::make(double beta, double T, int K, double window_symbols) {
    TrainingPulse p;
    p.beta = beta;
    p.T = T;
    p.K = K;
    p.N = static_cast<int>(std::ceil(window_symbols * K));
    p.time_origin = -0.25 * p.N * p.sample_period();
    p.validate();
    return p;
}

double auto_window_symbols(double spread_symbols) {
    // Delay-zero peak sits at 25% of the window, so the usable span behind it
    // is 75%. Margins keep the truncated tails below the percent level in the
    // energy, bandwidth and information sums.
    const double needed = (spread_symbols + 24.0) / 0.75;
    return std::max(32.0, std::ceil(needed));
}

double rrc_value(const TrainingPulse& pulse, double t) {
    const ShapeCoeffs c = coeffs(pulse.beta);
    const double u = std::abs(t / pulse.T);
    return shape(u, pulse.beta, c) / std::sqrt(pulse.T);
}

double rrc_derivative(const TrainingPulse& pulse, double t) {
    const ShapeCoeffs c = coeffs(pulse.beta);
    const double u = t / pulse.T;
    const double sign = u < 0.0 ? -1.0 : 1.0;   // g is even, g' odd
    const double g = shape_deriv(std::abs(u), pulse.beta, c);
    return sign * g / (pulse.T * std::sqrt(pulse.T));
}

double pulse_energy(const TrainingPulse& pulse) {
    double e = 0.0;
    for (int n = 0; n < pulse.N; ++n) {
        const double s = rrc_value(pulse, pulse.sample_time(n));
        e += s * s;
    }
    return e;
}

double mean_squared_bandwidth(const TrainingPulse& pulse) {
    double e = 0.0;
    double ed = 0.0;
    for (int n = 0; n < pulse.N; ++n) {
        const double t = pulse.sample_time(n);
        const double s = rrc_value(pulse, t);
        const double sd = rrc_derivative(pulse, t);
        e += s * s;
        ed += sd * sd;
    }
    return std::sqrt(ed / e) / (2.0 * kPi);
}

std::complex<double> pulse_spectrum(const TrainingPulse& pulse, double f) {
    std::complex<double> acc{0.0, 0.0};
    const double w = -2.0 * kPi * f;
    for (int n = 0; n < pulse.N; ++n) {
        const double t = pulse.sample_time(n);
        const double s = rrc_value(pulse, t);
        acc += s * std::polar(1.0, w * t);
    }
    return acc;
}

double cutoff_frequency(const TrainingPulse& pulse) {
    return (1.0 + pulse.beta) / (2.0 * pulse.T);
}

}  // namespace chanex
