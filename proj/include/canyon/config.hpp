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

#ifndef canyon_config_H
#define canyon_config_H

#include "canyon/harness.hpp"
#include "canyon/morphology.hpp"
#include "canyon/pathloss.hpp"
#include "canyon/smallscale.hpp"
#include "canyon/synthesis.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>

namespace canyon
{
    // Shared configuration document for every CLI subcommand. Each subcommand checks the
    // fields it needs; unknown keys are rejected everywhere.
    struct AppConfig
    {
        std::optional<ObservationRegion> region;
        std::optional<double> s_value;
        std::optional<ScenarioPreset> preset;

        EnvWeights weights;
        PathLossConfig pathloss;

        double sweep_d_min_m = 10.0;
        double sweep_d_max_m = 1000.0;
        std::size_t sweep_points = 50;

        SynthesisOptions synthesis;
        std::optional<ArrayGeometry> array;
        SmallScaleTable table = SmallScaleTable::defaults();

        std::size_t n_drops = 100;
        std::uint64_t master_seed = 0;
        bool master_seed_given = false;
        unsigned workers = 1;

        std::optional<LinkState> generate_state;
        std::optional<double> generate_distance_m;

        std::set<ExportFormat> formats{ExportFormat::Csv, ExportFormat::Json};
    };

    // Relative file references (region_file, table_overrides_file) resolve against base_dir.
    AppConfig parse_config(const std::string &json_text, const std::filesystem::path &base_dir = ".",
                           const std::string &source = "<config>");
    AppConfig load_config(const std::filesystem::path &path);

    std::set<ExportFormat> parse_formats(const std::string &text); // csv | json | both

    // Environment from, in order of precedence: region, explicit S, preset.
    // Throws ConfigError naming the missing fields if none is present.
    EnvFactor resolve_env(const AppConfig &cfg);
}

#endif
