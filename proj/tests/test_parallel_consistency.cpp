// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include <doctest.h>

#include <cmath>

#include "chanex/parallel.hpp"
#include "chanex/pathset_io.hpp"
#include "chanex/reference.hpp"
#include "test_helpers.hpp"

using namespace chanex;
namespace th = test_helpers;

// The OpenMP kernels only parallelize over independent outputs; every output
// element is accumulated serially inside one thread. These tests pin that
// contract: parallel and serial runs must agree bit for bit (the
// gram-factored and direct-summation information matrices differ in
// summation order, so they get a tolerance instead).

TEST_CASE("bound curve: parallel equals serial bit for bit") {
    const TrainingPulse pulse = TrainingPulse::make(0.2, 50e-9, 2, 64);
    const ArrayGeometry arr = ArrayGeometry::rectangular(4, 2, th::kLambda35GHz);
    const PathSet ps = grid_scenario(4, 8.0 * pulse.T, 12.0 * pulse.T, 0.6);
    const double noise_var = pulse_energy(pulse) / 100.0;
    std::vector<double> freqs;
    for (double fT = 0.0; fT <= 2.0; fT += 0.1) freqs.push_back(fT / pulse.T);

    parallel::set_enabled(true);
    const FullLbResult par = full_lower_bound(ps, arr, pulse, noise_var, freqs);
    const FullLbResult ser =
        reference::full_lower_bound_serial(ps, arr, pulse, noise_var, freqs);
    REQUIRE_FALSE(par.singular);
    REQUIRE(par.values.size() == ser.values.size());
    for (std::size_t i = 0; i < par.values.size(); ++i) CHECK(par.values[i] == ser.values[i]);
    CHECK(par.condition_number == ser.condition_number);
}

TEST_CASE("empirical mse: parallel equals serial bit for bit") {
    const TrainingPulse pulse = TrainingPulse::make(0.2, 50e-9, 2, 48);
    const ArrayGeometry arr = ArrayGeometry::rectangular(2, 2, th::kLambda35GHz);
    const PathSet ps = grid_scenario(2, 8.0 * pulse.T, 14.0 * pulse.T, 0.9);
    const double noise_var = pulse_energy(pulse) / 100.0;
    const std::vector<double> freqs{0.0, 0.1 / pulse.T, 0.3 / pulse.T};

    parallel::set_enabled(true);
    const MseCurve par =
        empirical_mse(ps, arr, pulse, noise_var, freqs, 8, 42, EstimatorKind::LS);
    const MseCurve ser = reference::empirical_mse_serial(ps, arr, pulse, noise_var, freqs, 8,
                                                         42, EstimatorKind::LS);
    for (std::size_t i = 0; i < par.values.size(); ++i) CHECK(par.values[i] == ser.values[i]);
}

TEST_CASE("sage extraction: parallel equals serial bit for bit") {
    const TrainingPulse pulse = TrainingPulse::make(0.2, 50e-9, 2, 64);
    const ArrayGeometry arr = ArrayGeometry::rectangular(4, 2, th::kLambda35GHz);
    PathSet ps;
    ps.paths.push_back({std::polar(1.0, 0.3), 8.4 * pulse.T, -1.2, 0.8});
    ps.paths.push_back({std::polar(0.8, -2.0), 24.6 * pulse.T, 0.4, 1.6});
    const double noise_var = pulse_energy(pulse) / 100.0;
    const ReceivedBlock block = synthesize_received(ps, arr, pulse, noise_var, 9);

    SageConfig cfg;
    cfg.L_target = 2;
    cfg.max_iterations = 4;

    parallel::set_enabled(true);
    const EstimationResult par = sage_extract(block, arr, pulse, cfg);
    const EstimationResult ser = reference::sage_extract_serial(block, arr, pulse, cfg);
    CHECK(par.residual_energy == ser.residual_energy);
    CHECK(par.iterations_used == ser.iterations_used);
    REQUIRE(par.paths.size() == ser.paths.size());
    for (int l = 0; l < par.paths.size(); ++l) {
        CHECK(par.paths.paths[l].tau == ser.paths.paths[l].tau);
        CHECK(par.paths.paths[l].phi == ser.paths.paths[l].phi);
        CHECK(par.paths.paths[l].theta == ser.paths.paths[l].theta);
        CHECK(par.paths.paths[l].alpha == ser.paths.paths[l].alpha);
    }
}

TEST_CASE("fisher: gram-factored parallel agrees with the direct route") {
    const TrainingPulse pulse = TrainingPulse::make(0.2, 50e-9, 2, 48);
    const ArrayGeometry arr = ArrayGeometry::rectangular(4, 2, th::kLambda35GHz);
    const PathSet ps = th::random_paths(3, pulse.T, 61);
    parallel::set_enabled(true);
    const FisherMatrix par = build_fisher(ps, arr, pulse, 0.4);
    {
        parallel::ScopedSerial serial;
        const FisherMatrix ser = build_fisher(ps, arr, pulse, 0.4);
        // same algorithm, same per-entry summation order
        CHECK((par.matrix - ser.matrix).norm() == 0.0);
    }
    const FisherMatrix direct = reference::build_fisher_direct(ps, arr, pulse, 0.4);
    CHECK((par.matrix - direct.matrix).norm() / direct.matrix.norm() < 1e-12);
}
