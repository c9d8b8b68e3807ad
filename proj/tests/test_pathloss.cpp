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

#include "catch_amalgamated.hpp"

#include "canyon/morphology.hpp"
#include "canyon/pathloss.hpp"

#include <cmath>

using namespace canyon;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Covered tests:
// - Effective S under both conventions
// - LOS / NLOS reference values against a term-by-term oracle
// - Dispatch and baseline identities
// - Log-distance sweep grid and columns
// - Error paths (d <= 0, missing or invalid d0, bad grid)

// Term-by-term oracle, written independently of the library.
static double oracle_los(double d, double s, double fc)
{
    return (20.0 + 0.5 * s) * std::log10(d) + (51.4 - 1.3 * s) + 21.0 * std::log10(fc);
}

static double oracle_nlos(double d, double s, double fc, double h_ut, double d0)
{
    return (35.3 + 9.1 * s) * std::log10(d) + 22.4 + 21.3 * std::log10(fc) - 0.3 * (h_ut - 1.5) +
           (-9.2) * s * std::log10(d0);
}

static PathLossConfig config(double fc, double h_ut, std::optional<double> d0 = std::nullopt)
{
    PathLossConfig c;
    c.carrier_frequency_ghz = fc;
    c.rx_antenna_height_m = h_ut;
    c.breakpoint_distance_m = d0;
    return c;
}

TEST_CASE("Pathloss - effective S")
{
    PathLossConfig raw, norm;
    norm.s_convention = SConvention::NormalizedS;
    CHECK(effective_s(env_from_composite(30.0), raw) == 30.0);
    CHECK(effective_s(env_from_composite(30.0), norm) == 0.0);
    CHECK(effective_s(env_from_composite(45.0), norm) == 1.0);
    CHECK(raw.s_convention == SConvention::RawS);
    CHECK(s_convention_from_string("normalized") == SConvention::NormalizedS);
    CHECK(s_convention_from_string("RAW_S") == SConvention::RawS);
    CHECK_THROWS(s_convention_from_string("both"));
}

TEST_CASE("Pathloss - LOS reference values")
{
    CHECK(pl_los(10.0, 0.0, config(1.0, 2.5)) == 71.4);
    CHECK_THAT(pl_los(100.0, 30.0, config(5.8, 2.5)), WithinAbs(oracle_los(100.0, 30.0, 5.8), 1e-9));
    CHECK_THAT(pl_los(100.0, 30.0, config(5.8, 2.5)), WithinAbs(98.432, 1e-3));
    for (double fc : {1.0, 2.4, 5.8, 28.0})
        CHECK_THAT(pl_los(1.0, 0.0, config(fc, 2.5)), WithinAbs(51.4 + 21.0 * std::log10(fc), 1e-12));
    CHECK_THROWS_AS(pl_los(0.0, 30.0, config(5.8, 2.5)), std::domain_error);
    CHECK_THROWS_AS(pl_los(-1.0, 30.0, config(5.8, 2.5)), std::domain_error);
}

TEST_CASE("Pathloss - NLOS reference values")
{
    CHECK(pl_nlos(10.0, 0.0, config(1.0, 1.5, 50.0)) == 57.7);
    CHECK_THAT(pl_nlos(100.0, 30.0, config(5.8, 2.5, 50.0)),
               WithinAbs(oracle_nlos(100.0, 30.0, 5.8, 2.5, 50.0), 1e-9));
    CHECK_THAT(pl_nlos(100.0, 30.0, config(5.8, 2.5, 50.0)), WithinAbs(186.045, 1e-3));

    // S~ = 1 under the normalized convention: the term-by-term sum
    // (35.3 + 9.1) * 2 + 22.4 + 21.3 log10(5.8) - 0.3 - 9.2 log10(50) evaluates to 111.53 dB.
    const double oracle = oracle_nlos(100.0, 1.0, 5.8, 2.5, 50.0);
    CHECK_THAT(oracle, WithinAbs(111.5305, 1e-4));
    auto norm = config(5.8, 2.5, 50.0);
    norm.s_convention = SConvention::NormalizedS;
    CHECK_THAT(pl(100.0, env_from_composite(45.0), LinkState::NLOS, norm), WithinAbs(oracle, 1e-9));

    CHECK_THROWS_WITH(pl_nlos(100.0, 30.0, config(5.8, 2.5)), ContainsSubstring("breakpoint_distance_m"));
    CHECK_THROWS_AS(pl_nlos(100.0, 30.0, config(5.8, 2.5, 0.0)), std::domain_error);
    CHECK_THROWS_AS(pl_nlos(0.0, 30.0, config(5.8, 2.5, 50.0)), std::domain_error);
}

TEST_CASE("Pathloss - dispatch and baseline")
{
    const auto cfg = config(5.8, 2.5, 50.0);
    const auto env = env_from_composite(30.0);
    CHECK(pl(10.0, env, LinkState::LOS, cfg) == pl_los(10.0, 30.0, cfg));
    CHECK(pl(10.0, env, LinkState::NLOS, cfg) == pl_nlos(10.0, 30.0, cfg));
    CHECK_THROWS_AS(pl(0.0, env, LinkState::LOS, cfg), std::domain_error);

    CHECK(pl_baseline(10.0, LinkState::LOS, config(1.0, 2.5)) == 71.4);
    CHECK(pl_baseline(10.0, LinkState::NLOS, config(1.0, 1.5, 50.0)) == 57.7);
    for (double d : {1.0, 7.5, 33.0, 480.0})
    {
        CHECK(pl_baseline(d, LinkState::LOS, cfg) == pl(d, env_from_composite(0.0), LinkState::LOS, cfg));
        CHECK(pl_baseline(d, LinkState::NLOS, cfg) == pl(d, env_from_composite(0.0), LinkState::NLOS, cfg));
    }

    auto base = cfg.baseline();
    CHECK(base.k_a == 0.0);
    CHECK(base.k_d == 0.0);
    CHECK(pl(80.0, env, LinkState::NLOS, base) == pl_baseline(80.0, LinkState::NLOS, cfg));
}

TEST_CASE("Pathloss - sweep")
{
    const auto grid = log_grid(10.0, 1000.0, 3);
    REQUIRE(grid.size() == 3);
    CHECK(grid[0] == 10.0);
    CHECK_THAT(grid[1], WithinRel(100.0, 1e-12));
    CHECK(grid[2] == 1000.0);
    CHECK_THROWS_AS(log_grid(10.0, 1000.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(100.0, 10.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(0.0, 10.0, 5), std::invalid_argument);

    const auto cfg = config(5.8, 2.5, 50.0);
    const auto env = env_from_composite(42.0);
    const auto rows = sweep(10.0, 300.0, 16, env, cfg);
    REQUIRE(rows.size() == 16);
    for (const auto &r : rows)
    {
        CHECK(r.pl_los_db == pl_los(r.distance_m, 42.0, cfg));
        CHECK(r.pl_nlos_db == pl_nlos(r.distance_m, 42.0, cfg));
        CHECK(r.baseline_los_db == pl_baseline(r.distance_m, LinkState::LOS, cfg));
        CHECK(r.baseline_nlos_db == pl_baseline(r.distance_m, LinkState::NLOS, cfg));
    }
    CHECK_THROWS(sweep(10.0, 300.0, 16, env, config(5.8, 2.5)));
}

TEST_CASE("Pathloss - frequency and distance structure")
{
    const auto a = config(2.0, 2.5, 50.0), b = config(20.0, 2.5, 50.0);
    for (double s : {0.0, 15.0, 45.0})
        for (double d : {5.0, 50.0, 500.0})
        {
            CHECK_THAT(pl_los(d, s, b) - pl_los(d, s, a), WithinAbs(21.0, 1e-9));
            CHECK_THAT(pl_nlos(d, s, b) - pl_nlos(d, s, a), WithinAbs(21.3, 1e-9));
            CHECK_THAT(pl_los(10.0 * d, s, a) - pl_los(d, s, a), WithinAbs(20.0 + 0.5 * s, 1e-9));
            CHECK_THAT(pl_nlos(10.0 * d, s, a) - pl_nlos(d, s, a), WithinAbs(35.3 + 9.1 * s, 1e-9));
        }
    // height correction only in NLOS
    CHECK_THAT(pl_nlos(100.0, 30.0, config(5.8, 11.5, 50.0)) - pl_nlos(100.0, 30.0, config(5.8, 1.5, 50.0)),
               WithinAbs(-3.0, 1e-9));
    CHECK(pl_los(100.0, 30.0, config(5.8, 11.5)) == pl_los(100.0, 30.0, config(5.8, 1.5)));
}
