// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace chanex {

/// SplitMix64 generator (Steele et al.). Output i is a fixed mixing function
/// of seed + i * gamma, which makes it effectively counter based: streams can
/// be split cheaply and sequences are reproducible across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double next_double_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = variance
    /// (Box-Muller; real and imaginary parts each carry variance/2).
    std::complex<double> next_complex_gaussian(double variance) {
        const double u1 = next_double_open();
        const double u2 = next_double();
        const double r = std::sqrt(-variance * std::log(u1));
        const double phase = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phase), r * std::sin(phase)};
    }

private:
    std::uint64_t state_;
};

/// Derives a decorrelated child seed for stream `index`. Used to hand every
/// Monte-Carlo trial (and every bundled scenario draw) its own disjoint
/// stream from one user-facing seed.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0xA0761D6478BD642FULL + index * 0xE7037ED1A0B428DBULL));
    return g.next_u64();
}

}  // namespace chanex
