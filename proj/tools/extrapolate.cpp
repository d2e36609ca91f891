// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.
//
// Command-line harness. Subcommands:
//   run      one experiment from a JSON config or a bundled preset
//   bounds   bound-only variant of run (estimators disabled)
//   pathset  validate a path-set CSV
//   compare  scalar discrepancy between two curve CSVs

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chanex/bounds.hpp"
#include "chanex/curve.hpp"
#include "chanex/experiment.hpp"
#include "chanex/pathset_io.hpp"

namespace {

using chanex::ExperimentConfig;

std::vector<ExperimentConfig> gather_configs(const std::string& config_path,
                                             const std::string& preset) {
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config " + config_path);
        nlohmann::json j;
        in >> j;
        return {ExperimentConfig::from_json(j)};
    }
    return chanex::preset_configs(preset);
}

int run_command(const std::string& config_path, const std::string& preset,
                const std::string& outdir, std::optional<int> trials,
                std::optional<std::uint64_t> seed, std::optional<double> snr_db,
                bool bounds_only) {
    auto configs = gather_configs(config_path, preset);
    for (auto& cfg : configs) {
        if (trials) cfg.trials = *trials;
        if (seed) cfg.seed = *seed;
        if (snr_db) cfg.snr_db = *snr_db;
        if (bounds_only) cfg.want_ls = cfg.want_sage = false;
        std::printf("[run] %s (M=%d, bandwidth %.6g MHz, snr %.3g dB, trials %d)\n",
                    cfg.name.c_str(), cfg.array_horizontal * cfg.array_vertical,
                    cfg.bandwidth_hz / 1e6, cfg.snr_db, cfg.trials);
        const chanex::RunArtifacts art = chanex::run_experiment(cfg, outdir);
        for (const auto& f : art.curve_files) std::printf("  wrote %s\n", f.c_str());
        std::printf("  wrote %s\n", art.manifest_file.c_str());
    }
    return 0;
}

int pathset_validate(const std::string& file, double normalization, std::uint64_t seed) {
    chanex::ScenarioSpec spec;
    spec.source = file;
    spec.normalization = normalization;
    spec.seed = seed;
    const chanex::PathSet ps = chanex::load_pathset(spec);
    double sum = 0.0;
    for (const auto& p : ps.paths) sum += std::abs(p.alpha);
    std::printf("paths: %d\n", ps.size());
    std::printf("gain magnitude sum: %.17g\n", sum);
    std::printf("delay span: [%.6g, %.6g] us\n", ps.min_delay() * 1e6, ps.max_delay() * 1e6);
    std::printf("ok\n");
    return 0;
}

int compare_command(const std::string& a, const std::string& b, const std::string& metric) {
    const chanex::Curve ca = chanex::read_curve_csv(a);
    const chanex::Curve cb = chanex::read_curve_csv(b);
    const chanex::CurveMetric m = metric == "rmse" ? chanex::CurveMetric::Rmse
                                                   : chanex::CurveMetric::MaxRatioDb;
    const double v = chanex::compare_curves(ca, cb, m);
    std::printf("%s = %.17g\n", metric.c_str(), v);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-extrapolation bound and estimator simulator"};
    app.require_subcommand(1);

    std::string config_path, preset = "fig3", outdir = "out", metric = "max-ratio-db";
    std::string pathset_file, curve_a, curve_b;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> snr_db;
    double normalization = 1.0;
    std::uint64_t pathset_seed = 1;

    auto add_run_options = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON experiment config");
        cmd->add_option("--preset", preset, "bundled preset: fig3, fig4, fig5 or fig6");
        cmd->add_option("--outdir", outdir, "output directory");
        cmd->add_option("--trials", trials, "override Monte-Carlo trial count");
        cmd->add_option("--seed", seed, "override the experiment seed");
        cmd->add_option("--snr-db", snr_db, "override the SNR (dB, ||s||^2 / sigma_w^2)");
    };

    CLI::App* run = app.add_subcommand("run", "run an experiment (bounds + estimators)");
    add_run_options(run);

    CLI::App* bounds = app.add_subcommand("bounds", "run the bound curves only");
    add_run_options(bounds);

    CLI::App* pathset = app.add_subcommand("pathset", "path-set utilities");
    CLI::App* validate = pathset->add_subcommand("validate", "parse and validate a CSV");
    validate->add_option("file", pathset_file, "path-set CSV")->required();
    validate->add_option("--normalization", normalization, "gain-sum target");
    validate->add_option("--seed", pathset_seed, "phase seed");

    CLI::App* compare = app.add_subcommand("compare", "compare two curve CSVs");
    compare->add_option("a", curve_a)->required();
    compare->add_option("b", curve_b)->required();
    compare->add_option("--metric", metric, "max-ratio-db or rmse");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_command(config_path, preset, outdir, trials, seed, snr_db, false);
        if (bounds->parsed())
            return run_command(config_path, preset, outdir, trials, seed, snr_db, true);
        if (validate->parsed())
            return pathset_validate(pathset_file, normalization, pathset_seed);
        if (compare->parsed()) return compare_command(curve_a, curve_b, metric);
    } catch (const chanex::SingularFisherError& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
