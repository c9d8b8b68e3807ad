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

#ifndef canyon_io_H
#define canyon_io_H

#include "canyon/pathloss.hpp"
#include "canyon/synthesis.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace canyon
{
    // Shortest round-trip decimal form; NaN prints as "nan".
    std::string format_number(double value);

    std::string sha256_hex(std::string_view content);

    // Writes `content` to `path`, creating parent directories. Throws IoError naming the path.
    void write_text_file(const std::filesystem::path &path, std::string_view content);

    std::string read_text_file(const std::filesystem::path &path);

    // Pretty-printed JSON document of one drop.
    std::string drop_to_json(const ChannelDrop &drop);

    // Flat MPC table, one row per component.
    std::string mpc_csv_header();
    void append_mpc_rows(std::string &csv, const ChannelDrop &drop);

    std::string sweep_csv(const std::vector<SweepRow> &rows);
    std::string pathloss_config_json(const PathLossConfig &cfg, const EnvFactor &env);
    // Sweep rows together with the configuration that produced them.
    std::string sweep_json(const std::vector<SweepRow> &rows, const PathLossConfig &cfg, const EnvFactor &env);
}

#endif
