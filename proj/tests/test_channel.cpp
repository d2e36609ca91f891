// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "chanex/channel.hpp"
#include "chanex/path_set.hpp"
#include "test_helpers.hpp"

using namespace chanex;
namespace th = test_helpers;

namespace {
constexpr double kPi = std::numbers::pi;

ArrayGeometry two_element_x(double first_x, double second_x) {
    ArrayGeometry a;
    a.wavelength = th::kLambda35GHz;
    a.positions = Eigen::Matrix3Xd::Zero(3, 2);
    a.positions(0, 0) = first_x;
    a.positions(0, 1) = second_x;
    return a;
}
}  // namespace

TEST_CASE("steering vector basics") {
    const ArrayGeometry single = ArrayGeometry::single_element(th::kLambda35GHz);
    for (double phi : {-2.0, 0.0, 1.3})
        for (double theta : {0.2, kPi / 2.0, 2.9}) {
            const auto a = steering_vector(single, phi, theta);
            CHECK(a.size() == 1);
            CHECK(std::abs(a(0) - std::complex<double>{1.0, 0.0}) < 1e-15);
        }

    const ArrayGeometry pair = two_element_x(0.0, th::kLambda35GHz / 2.0);
    // broadside: propagation direction orthogonal to the baseline
    const auto broadside = steering_vector(pair, kPi / 2.0, kPi / 2.0);
    CHECK(std::abs(broadside(0) - std::complex<double>{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(broadside(1) - std::complex<double>{1.0, 0.0}) < 1e-12);
    // endfire: half-wavelength spacing gives a pi phase step
    const auto endfire = steering_vector(pair, 0.0, kPi / 2.0);
    CHECK(std::abs(endfire(0) - std::complex<double>{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(endfire(1) - std::complex<double>{-1.0, 0.0}) < 1e-12);
}

TEST_CASE("steering entries always have unit magnitude") {
    const ArrayGeometry arr = ArrayGeometry::rectangular(4, 2, th::kLambda35GHz);
    for (int i = 0; i < 20; ++i) {
        const double phi = -kPi + 2.0 * kPi * (i + 0.5) / 20.0;
        const double theta = kPi * (i + 0.5) / 20.0;
        const auto a = steering_vector(arr, phi, theta);
        for (Eigen::Index m = 0; m < a.size(); ++m)
            CHECK(std::abs(a(m)) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("steering derivatives match finite differences") {
    const ArrayGeometry arr = ArrayGeometry::rectangular(4, 2, th::kLambda35GHz);
    const double h = 1e-6;
    for (double phi : {-1.8, 0.4, 2.2}) {
        for (double theta : {0.5, 1.3, 2.6}) {
            const auto d = steering_derivatives(arr, phi, theta);
            const auto ap = steering_vector(arr, phi + h, theta);
            const auto am = steering_vector(arr, phi - h, theta);
            const auto tp = steering_vector(arr, phi, theta + h);
            const auto tm = steering_vector(arr, phi, theta - h);
            for (Eigen::Index m = 0; m < d.d_phi.size(); ++m) {
                const std::complex<double> fd_phi = (ap(m) - am(m)) / (2.0 * h);
                const std::complex<double> fd_theta = (tp(m) - tm(m)) / (2.0 * h);
                const double scale_phi = std::max(std::abs(fd_phi), 1e-3);
                const double scale_theta = std::max(std::abs(fd_theta), 1e-3);
                CHECK(std::abs(d.d_phi(m) - fd_phi) / scale_phi < 1e-5);
                CHECK(std::abs(d.d_theta(m) - fd_theta) / scale_theta < 1e-5);
            }
        }
    }
}

TEST_CASE("single element has zero angle derivatives") {
    const ArrayGeometry single = ArrayGeometry::single_element(th::kLambda35GHz);
    const auto d = steering_derivatives(single, 0.7, 1.1);
    CHECK(std::abs(d.d_phi(0)) == 0.0);
    CHECK(std::abs(d.d_theta(0)) == 0.0);
}

TEST_CASE("origin-centered arrays satisfy the pattern symmetry condition") {
    // centered pair at +/- lambda/4
    const ArrayGeometry pair =
        two_element_x(-th::kLambda35GHz / 4.0, th::kLambda35GHz / 4.0);
    for (double phi : {-2.5, 0.3, 1.9}) {
        for (double theta : {0.4, 1.6}) {
            const auto a = steering_vector(pair, phi, theta);
            const auto d = steering_derivatives(pair, phi, theta);
            CHECK(std::abs((d.d_phi.dot(a)).real()) < 1e-10);
            CHECK(std::abs((d.d_theta.dot(a)).real()) < 1e-10);
        }
    }
    // the rectangular factory centers its grid, so the same holds there
    const ArrayGeometry rect = ArrayGeometry::rectangular(4, 2, th::kLambda35GHz);
    const auto a = steering_vector(rect, 0.8, 1.2);
    const auto d = steering_derivatives(rect, 0.8, 1.2);
    CHECK(std::abs(d.d_phi.dot(a)) < 1e-10 * a.size());
    CHECK(std::abs(d.d_theta.dot(a)) < 1e-10 * a.size());
}

TEST_CASE("channel frequency response closed cases") {
    const ArrayGeometry single = ArrayGeometry::single_element(th::kLambda35GHz);
    PathSet one;
    one.paths.push_back({{1.0, 0.0}, 0.0, 0.0, kPi / 2.0});
    for (double f : {0.0, 1e6, -3e6})
        CHECK(std::abs(channel_frequency_response(one, single, f)(0) -
                       std::complex<double>{1.0, 0.0}) < 1e-14);

    PathSet delayed;
    delayed.paths.push_back({{1.0, 0.0}, 1e-6, 0.0, kPi / 2.0});
    CHECK(std::abs(channel_frequency_response(delayed, single, 500e3)(0) -
                   std::complex<double>{-1.0, 0.0}) < 1e-12);

    PathSet two;
    two.paths.push_back({{1.0, 0.0}, 0.0, 0.0, kPi / 2.0});
    two.paths.push_back({{1.0, 0.0}, 1e-6, 0.0, kPi / 2.0});
    CHECK(std::abs(channel_frequency_response(two, single, 0.0)(0) -
                   std::complex<double>{2.0, 0.0}) < 1e-14);
}

TEST_CASE("response is conjugate symmetric in f for real gains") {
    // needs a real element response, so a single element at the origin;
    // complex steering phases on larger arrays break the symmetry
    const ArrayGeometry single = ArrayGeometry::single_element(th::kLambda35GHz);
    for (std::uint64_t seed : {99ULL, 100ULL, 101ULL}) {
        PathSet ps = th::random_paths(4, 50e-9, seed);
        for (auto& p : ps.paths) p.alpha = std::abs(p.alpha);  // make gains real
        for (double f : {1e5, 2.3e6, 7.7e6}) {
            const auto hp = channel_frequency_response(ps, single, f);
            const auto hm = channel_frequency_response(ps, single, -f);
            CHECK(std::abs(hm(0) - std::conj(hp(0))) < 1e-12 * std::abs(hp(0)));
        }
    }
}

TEST_CASE("extrapolate is the response evaluated at the estimates") {
    const ArrayGeometry arr = ArrayGeometry::rectangular(4, 2, th::kLambda35GHz);
    const PathSet ps = th::random_paths(3, 50e-9, 5);
    for (double f : {0.0, 4e6, -11e6}) {
        const auto a = channel_frequency_response(ps, arr, f);
        const auto b = extrapolate(ps, arr, f);
        CHECK((a - b).norm() == 0.0);  // same code path, bit identical
    }
}

TEST_CASE("merge: identical paths sum their gains") {
    PathSet ps;
    ps.paths.push_back({{0.5, 0.0}, 1e-7, 0.2, 1.2});
    ps.paths.push_back({{0.5, 0.0}, 1.0000001e-7, 0.2, 1.2});
    const auto r = merge_close_paths(ps, 1e-9, 1e-3);
    CHECK(r.paths.size() == 1);
    CHECK(std::abs(r.paths.paths[0].alpha - std::complex<double>{1.0, 0.0}) < 1e-12);
    CHECK(r.diagnostics.groups_merged == 1);
    CHECK_FALSE(r.diagnostics.degenerate_cancellation);
}

TEST_CASE("merge: well separated paths pass through unchanged") {
    PathSet ps;
    ps.paths.push_back({{1.0, 0.0}, 0.0, 0.2, 1.2});
    ps.paths.push_back({{1.0, 0.0}, 10e-9, 0.2, 1.2});
    const auto r = merge_close_paths(ps, 1e-9, 1e-3);
    CHECK(r.paths.size() == 2);
    CHECK(r.paths.paths[0].tau == 0.0);
    CHECK(r.paths.paths[1].tau == 10e-9);
}

TEST_CASE("merge: opposite gains flag degenerate cancellation") {
    PathSet ps;
    ps.paths.push_back({{1.0, 0.0}, 0.0, 0.2, 1.2});
    ps.paths.push_back({{-1.0, 0.0}, 0.1e-9, 0.2, 1.2});
    const auto r = merge_close_paths(ps, 1e-9, 1e-3);
    CHECK(r.paths.size() == 1);
    CHECK(std::abs(r.paths.paths[0].alpha) < 1e-12);
    CHECK(r.diagnostics.degenerate_cancellation);
}

TEST_CASE("merge is idempotent on random path sets") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const PathSet ps = th::random_paths(12, 50e-9, seed);
        const double dtol = 5e-8, atol = 0.4;
        const auto once = merge_close_paths(ps, dtol, atol);
        const auto twice = merge_close_paths(once.paths, dtol, atol);
        REQUIRE(twice.paths.size() == once.paths.size());
        for (int l = 0; l < once.paths.size(); ++l) {
            CHECK(twice.paths.paths[l].tau == once.paths.paths[l].tau);
            CHECK(twice.paths.paths[l].phi == once.paths.paths[l].phi);
            CHECK(twice.paths.paths[l].theta == once.paths.paths[l].theta);
            CHECK(twice.paths.paths[l].alpha == once.paths.paths[l].alpha);
        }
    }
}

TEST_CASE("path set validation catches bad members") {
    PathSet ps;
    CHECK_THROWS_AS(ps.validate(), std::invalid_argument);  // empty
    ps.paths.push_back({{1.0, 0.0}, -1e-9, 0.0, 1.0});
    CHECK_THROWS_AS(ps.validate(), std::invalid_argument);  // negative delay
    ps.paths[0] = {{1.0, 0.0}, 0.0, 4.0, 1.0};
    CHECK_THROWS_AS(ps.validate(), std::invalid_argument);  // azimuth out of range
    ps.paths[0] = {{1.0, 0.0}, 0.0, 0.0, 1.0};
    ps.paths.push_back({{0.5, 0.0}, 0.0, 0.0, 1.0});
    CHECK_THROWS_AS(ps.validate(), std::invalid_argument);  // duplicate tuple
    ps.paths[1].tau = 1e-9;
    CHECK_NOTHROW(ps.validate());
}

TEST_CASE("extrapolation error of a pure delay offset follows the phase-slip law") {
    const ArrayGeometry single = ArrayGeometry::single_element(th::kLambda35GHz);
    PathSet truth;
    truth.paths.push_back({{1.0, 0.0}, 2e-7, 0.0, kPi / 2.0});
    PathSet shifted = truth;
    const double dtau = 3.7e-9;
    shifted.paths[0].tau += dtau;
    for (double f : {1e6, 5e6, 23e6}) {
        const double err = std::norm(extrapolate(shifted, single, f)(0) -
                                     channel_frequency_response(truth, single, f)(0));
        const double expected = 4.0 * std::pow(std::sin(kPi * f * dtau), 2);
        CHECK(err == doctest::Approx(expected).epsilon(1e-12));
    }
    // at f = 0 only the gain error remains
    PathSet gain_off = truth;
    gain_off.paths[0].alpha += std::complex<double>{0.05, -0.02};
    const double err0 = std::norm(extrapolate(gain_off, single, 0.0)(0) -
                                  channel_frequency_response(truth, single, 0.0)(0));
    CHECK(err0 == doctest::Approx(std::norm(std::complex<double>{0.05, -0.02})).epsilon(1e-12));
}
