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

#ifndef canyon_pathloss_H
#define canyon_pathloss_H

#include "canyon/morphology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace canyon
{
    enum class LinkState
    {
        LOS,
        NLOS
    };

    std::string to_string(LinkState state);
    LinkState link_state_from_string(const std::string &text); // "LOS" / "NLOS"

    // Which value of the environmental factor enters the path-loss coefficients.
    enum class SConvention
    {
        RawS,       // S as computed from morphology
        NormalizedS // S~ = (S - 30) / 15
    };

    std::string to_string(SConvention c); // "raw" / "normalized"
    SConvention s_convention_from_string(const std::string &text);

    // Frequency in GHz, distances and heights in meters.
    struct PathLossConfig
    {
        double carrier_frequency_ghz = 5.8;
        double rx_antenna_height_m = 2.5;
        std::optional<double> breakpoint_distance_m; // d_0, required for NLOS
        double k_a = 0.5;
        double k_b = -1.3;
        double k_c = 9.1;
        double k_d = -9.2;
        SConvention s_convention = SConvention::RawS;

        // Same geometry with all environment coefficients zeroed.
        PathLossConfig baseline() const;

        // Throws std::invalid_argument on f_c <= 0, h_UT < 0 or d_0 <= 0.
        void validate() const;

        bool operator==(const PathLossConfig &) const = default;
    };

    double effective_s(const EnvFactor &env, const PathLossConfig &cfg);

    double pl_los(double distance_m, double s_eff, const PathLossConfig &cfg);
    double pl_nlos(double distance_m, double s_eff, const PathLossConfig &cfg);
    double pl(double distance_m, const EnvFactor &env, LinkState state, const PathLossConfig &cfg);
    double pl_baseline(double distance_m, LinkState state, const PathLossConfig &cfg);

    struct SweepRow
    {
        double distance_m;
        double pl_los_db;
        double pl_nlos_db;
        double baseline_los_db;
        double baseline_nlos_db;
    };

    // n_points log-spaced distances from d_min to d_max inclusive.
    std::vector<double> log_grid(double d_min, double d_max, std::size_t n_points);

    std::vector<SweepRow> sweep(double d_min, double d_max, std::size_t n_points,
                                const EnvFactor &env, const PathLossConfig &cfg);
}

#endif
