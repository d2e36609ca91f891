// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <filesystem>
#include <fstream>

#include "chanex/pathset_io.hpp"

using namespace chanex;

namespace {
std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("bundled scenario: pinned row values and normalization") {
    const PathSet ps = bundled_fig2(7);
    REQUIRE(ps.size() == 21);
    // second path of the bundle, by row-index pairing of the delay and angle tables
    CHECK(std::abs(ps.paths[1].alpha) == doctest::Approx(0.0720925269986881).epsilon(1e-15));
    CHECK(ps.paths[1].tau == doctest::Approx(2.06865350890985e-7).epsilon(1e-15));
    CHECK(ps.paths[1].phi == doctest::Approx(1.10714871779409).epsilon(1e-15));
    CHECK(ps.paths[1].theta == doctest::Approx(1.43742864902017).epsilon(1e-15));
    // near-zero placeholder first path is kept
    CHECK(std::abs(ps.paths[0].alpha) == doctest::Approx(9.999999999e-11).epsilon(1e-9));
    CHECK(ps.paths[0].tau == 0.0);
    double sum = 0.0;
    for (const auto& p : ps.paths) sum += std::abs(p.alpha);
    CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("bundled scenario phases are seeded and deterministic") {
    const PathSet a = bundled_fig2(7);
    const PathSet b = bundled_fig2(7);
    const PathSet c = bundled_fig2(8);
    bool any_diff = false;
    for (int l = 0; l < a.size(); ++l) {
        CHECK(a.paths[l].alpha == b.paths[l].alpha);
        any_diff |= a.paths[l].alpha != c.paths[l].alpha;
    }
    CHECK(any_diff);
}

TEST_CASE("bundled data matches the shipped csv") {
    ScenarioSpec spec;
    spec.source = std::string(CHANEX_SOURCE_DIR) + "/data/fig2_pathset.csv";
    spec.seed = 7;
    const PathSet from_file = load_pathset(spec);
    const PathSet bundled = bundled_fig2(7);
    REQUIRE(from_file.size() == bundled.size());
    for (int l = 0; l < bundled.size(); ++l) {
        CHECK(from_file.paths[l].alpha == bundled.paths[l].alpha);
        CHECK(from_file.paths[l].tau == bundled.paths[l].tau);
        CHECK(from_file.paths[l].phi == bundled.paths[l].phi);
        CHECK(from_file.paths[l].theta == bundled.paths[l].theta);
    }
}

TEST_CASE("one-row file yields a single unit path") {
    const std::string path = temp_file("chanex_single.csv");
    {
        std::ofstream out(path);
        out << "gain,delay_s,azimuth_rad,elevation_rad\n1,0,0,1.5\n";
    }
    ScenarioSpec spec;
    spec.source = path;
    const PathSet ps = load_pathset(spec);
    REQUIRE(ps.size() == 1);
    CHECK(std::abs(ps.paths[0].alpha) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ps.paths[0].tau == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("save and reload round-trips the numeric columns bit for bit") {
    const PathSet original = bundled_fig2(3);
    const std::string path_a = temp_file("chanex_roundtrip_a.csv");
    const std::string path_b = temp_file("chanex_roundtrip_b.csv");
    save_pathset_csv(original, path_a);
    ScenarioSpec spec;
    spec.source = path_a;
    spec.phase_policy = PhasePolicy::FromFile;
    const PathSet again = load_pathset(spec);
    REQUIRE(again.size() == original.size());
    for (int l = 0; l < original.size(); ++l) {
        CHECK(again.paths[l].tau == original.paths[l].tau);
        CHECK(again.paths[l].phi == original.paths[l].phi);
        CHECK(again.paths[l].theta == original.paths[l].theta);
    }
    // delay and angle columns reproduce themselves exactly; the gain/phase
    // pair goes through a polar decomposition of the complex gain, which is
    // lossless only to the last ulp
    for (int l = 0; l < original.size(); ++l) {
        const double ga = std::abs(original.paths[l].alpha);
        const double gb = std::abs(again.paths[l].alpha);
        CHECK(std::abs(ga - gb) <= 2.0 * std::numeric_limits<double>::epsilon() * ga);
        const double pa = std::arg(original.paths[l].alpha);
        const double pb = std::arg(again.paths[l].alpha);
        CHECK(std::abs(pa - pb) <= 4.0 * std::numeric_limits<double>::epsilon() * 3.2);
    }
    save_pathset_csv(again, path_b);
    // the text form is a fixed point for the exactly-stored columns: delays
    // and angles appear verbatim in both files
    std::ifstream a(path_a), b(path_b);
    std::string la, lb;
    std::getline(a, la);
    std::getline(b, lb);
    CHECK(la == lb);  // header
    while (std::getline(a, la) && std::getline(b, lb)) {
        auto col = [](const std::string& line, int idx) {
            std::size_t start = 0;
            for (int i = 0; i < idx; ++i) start = line.find(',', start) + 1;
            return line.substr(start, line.find(',', start) - start);
        };
        for (int c : {1, 2, 3}) CHECK(col(la, c) == col(lb, c));
    }
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
}

TEST_CASE("parse errors carry the offending row number") {
    const std::string path = temp_file("chanex_bad.csv");
    {
        std::ofstream out(path);
        out << "gain,delay_s,azimuth_rad,elevation_rad\n1,0,0,1.5\nnot-a-number,0,0,1\n";
    }
    ScenarioSpec spec;
    spec.source = path;
    try {
        load_pathset(spec);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("negative gains and delays are rejected") {
    for (const char* row : {"-0.5,0,0,1.5", "0.5,-1e-9,0,1.5"}) {
        const std::string path = temp_file("chanex_neg.csv");
        {
            std::ofstream out(path);
            out << "gain,delay_s,azimuth_rad,elevation_rad\n" << row << "\n";
        }
        ScenarioSpec spec;
        spec.source = path;
        CHECK_THROWS_AS(load_pathset(spec), std::runtime_error);
        std::remove(path.c_str());
    }
}

TEST_CASE("sum-power normalization is available behind the mode flag") {
    const std::string path = temp_file("chanex_power.csv");
    {
        std::ofstream out(path);
        out << "gain,delay_s,azimuth_rad,elevation_rad\n3,0,0,1.5\n4,1e-9,0.5,1.5\n";
    }
    ScenarioSpec spec;
    spec.source = path;
    spec.norm_mode = GainNormalization::SumPower;
    const PathSet ps = load_pathset(spec);
    double power = 0.0;
    for (const auto& p : ps.paths) power += std::norm(p.alpha);
    CHECK(power == doctest::Approx(1.0).epsilon(1e-12));
    std::remove(path.c_str());
}

TEST_CASE("synthetic recipes") {
    const double T = 50e-9;
    const PathSet single = single_path_scenario(5.0 * T);
    REQUIRE(single.size() == 1);
    CHECK(std::abs(single.paths[0].alpha) == 1.0);

    const PathSet two = two_path_delay_scenario(0.0, 100.0, T);
    REQUIRE(two.size() == 2);
    CHECK(two.paths[1].tau - two.paths[0].tau == doctest::Approx(100.0 * T).epsilon(1e-15));

    const PathSet fan = two_path_angle_scenario(5.0 * T, -0.5, 1.0);
    REQUIRE(fan.size() == 2);
    CHECK(fan.paths[1].phi - fan.paths[0].phi == doctest::Approx(1.0).epsilon(1e-12));

    const PathSet grid = grid_scenario(4, 0.0, 5.0 * T, 0.5);
    REQUIRE(grid.size() == 4);
    for (int l = 0; l < 4; ++l)
        CHECK(grid.paths[l].tau == doctest::Approx(5.0 * T * l).epsilon(1e-15));
    CHECK_NOTHROW(grid.validate());
}
