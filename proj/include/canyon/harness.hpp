// SPDX-License-Identifier: Apache-2.0
//
// canyon-sim: environment-conditioned channel simulator for street-canyon intersections
// Copyright (C) 2026 The canyon-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef canyon_harness_H
#define canyon_harness_H

#include "canyon/morphology.hpp"
#include "canyon/pathloss.hpp"
#include "canyon/smallscale.hpp"
#include "canyon/stats.hpp"
#include "canyon/synthesis.hpp"

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace canyon
{
    // A scenario: representative S, breakpoint, and the (distance, link state) schedule drops cycle through.
    struct ScenarioPreset
    {
        std::string name;
        double s_value = 30.0;
        std::pair<double, double> s_range{25.0, 35.0};
        double default_d0_m = 50.0;
        std::vector<double> distance_grid_m;
        std::vector<LinkState> state_schedule; // parallel to distance_grid_m

        // HCL (S=45), MCL (S=30), LCL (S=15); throws ConfigError for other names.
        static ScenarioPreset builtin(const std::string &name);

        // Log-spaced 10..300 m.
        static std::vector<double> default_distance_grid();
        // LOS below d0, NLOS at and above.
        static std::vector<LinkState> schedule_by_breakpoint(const std::vector<double> &grid, double d0_m);

        // Copy with every grid point forced to `state`.
        ScenarioPreset with_state(LinkState state) const;

        EnvFactor env(const EnvWeights &weights = {}) const;
        void validate() const;
    };

    const std::vector<std::string> &builtin_preset_names();

    struct CampaignOptions
    {
        SynthesisOptions synthesis;
        FrequencyGrid grid = FrequencyGrid::sounder();
        SmallScaleTable table = SmallScaleTable::defaults();
        EnvWeights weights;
        unsigned workers = 1; // does not affect results
    };

    struct DropRecord
    {
        SeedRecord seed_record;
        LinkState state = LinkState::LOS;
        double distance_m = 0.0;
        double pl_model_db = 0.0; // large-scale model
        double pl_ctf_db = 0.0;   // from the synthesized transfer function
        double ds_ns = 0.0;
        double asa = 0.0; // dimensionless unit-phasor spread
        double esa = 0.0;
        int n_clusters = 0;
        std::size_t n_mpc = 0;
    };

    enum class Metric
    {
        DelaySpread,
        Asa,
        Esa
    };

    std::string to_string(Metric m); // ds, asa, esa

    struct MetricCdf
    {
        LinkState state;
        Metric metric;
        std::vector<CdfPoint> points;
    };

    struct CampaignResult
    {
        ScenarioPreset preset;
        PathLossConfig plcfg;
        std::uint64_t master_seed = 0;
        CampaignOptions options;
        std::vector<DropRecord> records;
        std::vector<MetricCdf> cdfs; // per state present, per metric

        std::vector<double> metric_values(LinkState state, Metric metric) const;
        std::size_t count(LinkState state) const;
        // mean over records of |pl_ctf - pl_model|
        double mean_abs_pl_error_db() const;
        // 10 log10( mean over records of received energy / model energy )
        double energy_bias_db() const;
    };

    // Drop i uses grid point i mod grid size and substream (master_seed, i). If plcfg has no
    // breakpoint, the preset's default_d0_m is used.
    CampaignResult run_campaign(const ScenarioPreset &preset, std::size_t n_drops, const PathLossConfig &plcfg,
                                std::uint64_t master_seed, const CampaignOptions &options = {});

    struct StateRmse
    {
        LinkState state;
        std::size_t count = 0;
        double rmse_db = 0.0;
    };

    // Model-vs-model RMSE over the campaign's (distance, state) drop set. This compares two model
    // curves on synthetic drops; it is not a fit against measured path loss.
    struct ModelComparison
    {
        std::vector<StateRmse> per_state;
        double rmse(LinkState state) const;
    };

    ModelComparison compare_models(const ScenarioPreset &preset, std::size_t n_drops, const PathLossConfig &plcfg_a,
                                   const PathLossConfig &plcfg_b, std::uint64_t master_seed);

    enum class ExportFormat
    {
        Csv,
        Json
    };

    struct ManifestEntry
    {
        std::string artifact;
        std::string format; // csv or json
        std::string path;   // relative to the export directory
        std::string sha256;
        std::size_t bytes = 0;
    };

    struct Manifest
    {
        std::vector<ManifestEntry> entries;
        std::string to_json() const;
    };

    // Writes records, CDFs, path-loss sweep and config snapshot, plus manifest.json.
    Manifest export_campaign(const CampaignResult &result, const std::filesystem::path &dir,
                             const std::set<ExportFormat> &formats);

    // Complete description of the campaign inputs (workers excluded).
    std::string campaign_config_snapshot(const CampaignResult &result);
}

#endif
