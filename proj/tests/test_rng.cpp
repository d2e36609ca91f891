// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include <doctest.h>

#include <cmath>
#include <complex>

#include "chanex/rng.hpp"

using chanex::SplitMix64;

TEST_CASE("splitmix64 is deterministic and stream seeds differ") {
    SplitMix64 a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
    }
    CHECK(c.next_u64() != SplitMix64(42).next_u64());
    CHECK(chanex::derive_stream_seed(1, 0) != chanex::derive_stream_seed(1, 1));
    CHECK(chanex::derive_stream_seed(1, 0) == chanex::derive_stream_seed(1, 0));
}

TEST_CASE("complex gaussian has the requested variance and circular symmetry") {
    SplitMix64 rng(7);
    const int n = 200000;
    const double var = 2.5;
    double p2 = 0.0;
    std::complex<double> mean{0.0, 0.0};
    double re2 = 0.0, im2 = 0.0, cross = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto z = rng.next_complex_gaussian(var);
        p2 += std::norm(z);
        mean += z;
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
        cross += z.real() * z.imag();
    }
    p2 /= n;
    re2 /= n;
    im2 /= n;
    cross /= n;
    const double tol = 4.0 * var / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(p2 - var) < tol);
    CHECK(std::abs(re2 - var / 2.0) < tol);
    CHECK(std::abs(im2 - var / 2.0) < tol);
    CHECK(std::abs(cross) < tol);
    CHECK(std::abs(mean) / static_cast<double>(n) < tol);
}

TEST_CASE("uniform doubles stay in range") {
    SplitMix64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = rng.next_double_open();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}
