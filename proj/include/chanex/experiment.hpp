// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chanex/bounds.hpp"
#include "chanex/pathset_io.hpp"
#include "chanex/sage.hpp"

namespace chanex {

/// Recipe-based scenario used by experiment configs; mirrors the factory
/// functions in pathset_io.
struct RecipeSpec {
    std::string name;  ///< single-path | two-path-delay-separated | two-path-angle-separated | grid
    nlohmann::json params;
};

/// Full description of one reproducible experiment run.
struct ExperimentConfig {
    std::string name = "run";

    ScenarioSpec scenario;                 ///< bundled name or CSV file
    std::optional<RecipeSpec> recipe;      ///< overrides scenario.source when set

    int array_horizontal = 1;  ///< 1 x 1 selects the single-antenna mode
    int array_vertical = 1;
    double carrier_hz = 3.5e9;

    double bandwidth_hz = 20e6;  ///< 1 / T
    double beta = 0.2;
    int oversampling = 2;
    double window_symbols = 0.0;  ///< 0 = automatic from the delay spread

    double snr_db = 20.0;

    double freq_start = 0.0;  ///< f * T grid
    double freq_stop = 3.0;
    double freq_step = 0.1;

    int trials = 100;
    std::uint64_t seed = 1;

    bool want_ls = false;
    bool want_sage = false;
    bool want_full_lb = true;
    bool want_simplified_lb = true;

    SageConfig sage;
    LbOptions solver;
    std::optional<double> merge_delay_tol_s;   ///< pre-merge before the bound
    std::optional<double> merge_angle_tol_rad;

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    void validate() const;
};

/// Raised when the information matrix is flagged singular and no fallback was
/// requested; the separation report has been written next to the outputs.
struct SingularFisherError : std::runtime_error {
    explicit SingularFisherError(const std::string& what) : std::runtime_error(what) {}
};

struct RunArtifacts {
    std::vector<std::string> curve_files;
    std::string manifest_file;
    nlohmann::json manifest;
};

/// Runs one experiment: loads the scenario, sizes the observation window,
/// evaluates the requested bounds and Monte-Carlo estimator curves, and
/// writes one CSV per curve plus a JSON manifest into outdir. Deterministic:
/// the same config and seed reproduce the CSV files byte for byte.
RunArtifacts run_experiment(const ExperimentConfig& config, const std::string& outdir);

/// Bundled experiment presets (fig3, fig4, fig5, fig6): desk-scale sweeps
/// over array size and bandwidth on the bundled scenario. Each preset is a
/// list of runs sharing an output directory.
std::vector<ExperimentConfig> preset_configs(const std::string& name);

}  // namespace chanex
