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

#include "canyon/pathloss.hpp"

#include <cmath>
#include <stdexcept>

namespace canyon
{
    std::string to_string(LinkState state)
    {
        return state == LinkState::LOS ? "LOS" : "NLOS";
    }

    LinkState link_state_from_string(const std::string &text)
    {
        if (text == "LOS")
            return LinkState::LOS;
        if (text == "NLOS")
            return LinkState::NLOS;
        throw std::invalid_argument("unknown link state '" + text + "' (expected LOS or NLOS)");
    }

    std::string to_string(SConvention c)
    {
        return c == SConvention::RawS ? "raw" : "normalized";
    }

    SConvention s_convention_from_string(const std::string &text)
    {
        if (text == "raw" || text == "RAW_S")
            return SConvention::RawS;
        if (text == "normalized" || text == "NORMALIZED_S")
            return SConvention::NormalizedS;
        throw std::invalid_argument("unknown s_convention '" + text + "' (expected raw or normalized)");
    }

    PathLossConfig PathLossConfig::baseline() const
    {
        PathLossConfig b = *this;
        b.k_a = b.k_b = b.k_c = b.k_d = 0.0;
        return b;
    }

    void PathLossConfig::validate() const
    {
        if (!(carrier_frequency_ghz > 0.0))
            throw std::invalid_argument("carrier_frequency_ghz must be > 0");
        if (!(rx_antenna_height_m >= 0.0))
            throw std::invalid_argument("rx_antenna_height_m must be >= 0");
        if (breakpoint_distance_m && !(*breakpoint_distance_m > 0.0))
            throw std::invalid_argument("breakpoint_distance_m must be > 0");
    }

    double effective_s(const EnvFactor &env, const PathLossConfig &cfg)
    {
        return cfg.s_convention == SConvention::RawS ? env.s : env.s_norm;
    }

    double pl_los(double distance_m, double s_eff, const PathLossConfig &cfg)
    {
        if (!(distance_m > 0.0))
            throw std::domain_error("distance must be > 0");
        if (!(cfg.carrier_frequency_ghz > 0.0))
            throw std::domain_error("carrier frequency must be > 0");
        // accumulated in extended precision so decimal reference points round back exactly
        using X = long double;
        const X s = s_eff;
        const X pl = (20.0L + X(cfg.k_a) * s) * std::log10(X(distance_m)) + (51.4L + X(cfg.k_b) * s) +
                     21.0L * std::log10(X(cfg.carrier_frequency_ghz));
        return static_cast<double>(pl);
    }

    double pl_nlos(double distance_m, double s_eff, const PathLossConfig &cfg)
    {
        if (!(distance_m > 0.0))
            throw std::domain_error("distance must be > 0");
        if (!cfg.breakpoint_distance_m)
            throw std::domain_error("breakpoint_distance_m (d_0) is required for NLOS path loss");
        const double d0 = *cfg.breakpoint_distance_m;
        if (!(d0 > 0.0))
            throw std::domain_error("breakpoint_distance_m (d_0) must be > 0");
        if (!(cfg.carrier_frequency_ghz > 0.0))
            throw std::domain_error("carrier frequency must be > 0");
        using X = long double;
        const X s = s_eff;
        const X pl = (35.3L + X(cfg.k_c) * s) * std::log10(X(distance_m)) + 22.4L +
                     21.3L * std::log10(X(cfg.carrier_frequency_ghz)) - 0.3L * (X(cfg.rx_antenna_height_m) - 1.5L) +
                     X(cfg.k_d) * s * std::log10(X(d0));
        return static_cast<double>(pl);
    }

    double pl(double distance_m, const EnvFactor &env, LinkState state, const PathLossConfig &cfg)
    {
        const double s_eff = effective_s(env, cfg);
        return state == LinkState::LOS ? pl_los(distance_m, s_eff, cfg) : pl_nlos(distance_m, s_eff, cfg);
    }

    double pl_baseline(double distance_m, LinkState state, const PathLossConfig &cfg)
    {
        return state == LinkState::LOS ? pl_los(distance_m, 0.0, cfg) : pl_nlos(distance_m, 0.0, cfg);
    }

    std::vector<double> log_grid(double d_min, double d_max, std::size_t n_points)
    {
        if (n_points < 2)
            throw std::invalid_argument("n_points must be >= 2");
        if (!(d_min > 0.0) || !(d_max > d_min))
            throw std::invalid_argument("distance range must satisfy 0 < d_min < d_max");
        std::vector<double> grid(n_points);
        const double lo = std::log10(d_min), hi = std::log10(d_max);
        for (std::size_t i = 0; i < n_points; ++i)
            grid[i] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1));
        // Pin the endpoints so they are exact.
        grid.front() = d_min;
        grid.back() = d_max;
        return grid;
    }

    std::vector<SweepRow> sweep(double d_min, double d_max, std::size_t n_points,
                                const EnvFactor &env, const PathLossConfig &cfg)
    {
        cfg.validate();
        std::vector<SweepRow> rows;
        for (double d : log_grid(d_min, d_max, n_points))
            rows.push_back({d, pl(d, env, LinkState::LOS, cfg), pl(d, env, LinkState::NLOS, cfg),
                            pl_baseline(d, LinkState::LOS, cfg), pl_baseline(d, LinkState::NLOS, cfg)});
        return rows;
    }
}
