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

#include "canyon/errors.hpp"
#include "canyon/morphology.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

using namespace canyon;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Covered tests:
// - Area-weighted mean height, unweighted dispersion, density
// - Composite factor, weights and normalization
// - Scenario classes and extrapolation flag
// - Region parsing, diagnostics, shipped region files
// - Scale and permutation invariance

static ObservationRegion region(std::vector<Building> b, double area)
{
    return {"test", area, std::move(b)};
}

TEST_CASE("Morphology - weighted mean height")
{
    CHECK(weighted_mean_height(region({{20, 100}, {20, 300}}, 1000)) == 20.0);
    CHECK(weighted_mean_height(region({{10, 100}, {30, 100}}, 1000)) == 20.0);

    const double oracle = (10.0 * 100.0 + 30.0 * 300.0) / (100.0 + 300.0);
    CHECK_THAT(weighted_mean_height(region({{10, 100}, {30, 300}}, 1000)), WithinRel(oracle, 1e-12));
    CHECK_THAT(weighted_mean_height(region({{10, 100}, {30, 300}}, 1000)), WithinAbs(25.0, 1e-12));

    CHECK_THROWS_WITH(weighted_mean_height(region({}, 1000)), ContainsSubstring("no buildings"));
}

TEST_CASE("Morphology - height dispersion")
{
    CHECK(height_dispersion(region({{20, 100}, {20, 300}}, 1000)) == 0.0);
    CHECK(height_dispersion(region({{7, 50}}, 1000)) == 0.0);

    const double oracle = std::sqrt(((10.0 - 20.0) * (10.0 - 20.0) + (30.0 - 20.0) * (30.0 - 20.0)) / 1.0);
    CHECK_THAT(height_dispersion(region({{10, 100}, {30, 100}}, 1000)), WithinRel(oracle, 1e-12));

    // deviations from the weighted mean, summed without weights
    const auto r = region({{10, 100}, {30, 300}, {50, 100}}, 2000);
    const double hbar = (10.0 * 100 + 30.0 * 300 + 50.0 * 100) / 500.0;
    const double ss = (10 - hbar) * (10 - hbar) + (30 - hbar) * (30 - hbar) + (50 - hbar) * (50 - hbar);
    CHECK_THAT(height_dispersion(r), WithinRel(std::sqrt(ss / 2.0), 1e-12));
}

TEST_CASE("Morphology - building density")
{
    CHECK_THAT(building_density(region({{5, 100}, {5, 300}}, 1000)), WithinRel(0.4, 1e-15));
    CHECK(building_density(region({{5, 500}}, 500)) == 1.0);
    CHECK_THAT(building_density(region({{5, 120}, {5, 80}, {5, 50}}, 2000)), WithinRel(250.0 / 2000.0, 1e-15));
    CHECK_THROWS(building_density(region({{5, 100}}, 0.0)));
}

TEST_CASE("Morphology - composite factor")
{
    const auto flat = composite_factor(region({{20, 100}, {20, 300}}, 1000));
    CHECK_THAT(flat.s, WithinRel(0.5 * 20.0 + 0.2 * 0.0 + 0.8 * 0.4, 1e-12));
    CHECK_THAT(flat.s_norm, WithinAbs(-1.312, 1e-12));

    const auto two = composite_factor(region({{10, 100}, {30, 100}}, 500));
    const double oracle = 0.5 * 20.0 + 0.2 * std::sqrt(200.0) + 0.8 * (200.0 / 500.0);
    CHECK_THAT(two.s, WithinRel(oracle, 1e-12));
    CHECK_THAT(two.s, WithinAbs(13.1484, 1e-4));
    CHECK(two.h_height == 20.0);
    CHECK(two.has_descriptors());

    CHECK(normalize_s(30.0) == 0.0);
    CHECK(normalize_s(45.0) == 1.0);
    const auto bare = env_from_composite(30.0);
    CHECK(bare.s_norm == 0.0);
    CHECK_FALSE(bare.has_descriptors());

    EnvWeights w;
    w.height = 1.0;
    w.dispersion = 2.0;
    w.density = 3.0;
    w.norm_center = 10.0;
    w.norm_scale = 5.0;
    const auto custom = composite_factor(region({{10, 100}, {30, 100}}, 500), w);
    const double s_custom = 20.0 + 2.0 * std::sqrt(200.0) + 3.0 * 0.4;
    CHECK_THAT(custom.s, WithinRel(s_custom, 1e-12));
    CHECK_THAT(custom.s_norm, WithinRel((s_custom - 10.0) / 5.0, 1e-12));
}

TEST_CASE("Morphology - scenario classes")
{
    CHECK(classify(45.0) == ScenarioClass::HCL);
    CHECK(classify(40.0) == ScenarioClass::HCL);
    CHECK(classify(50.0) == ScenarioClass::HCL);
    CHECK(classify(30.0) == ScenarioClass::MCL);
    CHECK(classify(15.0) == ScenarioClass::LCL);
    CHECK(classify(60.0) == ScenarioClass::OutOfRange);
    CHECK(classify(37.5) == ScenarioClass::OutOfRange);
    CHECK(classify(5.0) == ScenarioClass::OutOfRange);
    CHECK(to_string(ScenarioClass::OutOfRange) == "out-of-range");
    CHECK(to_string(ScenarioClass::HCL) == "HCL");

    CHECK(is_extrapolated(normalize_s(60.0)));
    CHECK_FALSE(is_extrapolated(normalize_s(45.0)));
    CHECK_FALSE(is_extrapolated(normalize_s(15.0)));
    CHECK(is_extrapolated(normalize_s(5.0)));
}

TEST_CASE("Morphology - region parsing")
{
    const auto r = parse_region(R"({"name": "x", "region_area_m2": 1000,
        "buildings": [{"height_m": 12, "footprint_area_m2": 200}, {"height_m": 18, "footprint_area_m2": 150}]})");
    CHECK(r.buildings.size() == 2);
    CHECK(r.name == "x");
    CHECK(r.buildings[1].height_m == 18.0);

    CHECK_THROWS_AS(parse_region(R"({"name": "x", "region_area_m2": 1000,
        "buildings": [{"height_m": 12, "footprint_area_m2": 200}, {"height_m": 18, "footprint_area_m2": -5}]})"),
                    ConfigError);
    CHECK_THROWS_WITH(parse_region(R"({"name": "x", "region_area_m2": 1000,
        "buildings": [{"height_m": 12, "footprint_area_m2": 200}, {"height_m": 18, "footprint_area_m2": -5}]})"),
                      ContainsSubstring("buildings[1].footprint_area_m2"));
    CHECK_THROWS_WITH(parse_region(R"({"name": "x", "region_area_m2": 1000, "buildings": []})"),
                      ContainsSubstring("no buildings"));
    CHECK_THROWS_WITH(parse_region("{\n\"name\": \"x\",\n\"region_area_m2\": ,\n}", "bad.json"),
                      ContainsSubstring("bad.json:3"));
    CHECK_THROWS_WITH(parse_region(R"({"name": "x", "buildings": []})"), ContainsSubstring("region_area_m2"));
}

TEST_CASE("Morphology - load region from file")
{
    const auto dir = std::filesystem::temp_directory_path() / "canyon_test_morphology";
    std::filesystem::create_directories(dir);
    const auto path = dir / "two.json";
    std::ofstream(path) << R"({"name": "two", "region_area_m2": 500,
        "buildings": [{"height_m": 10, "footprint_area_m2": 100}, {"height_m": 30, "footprint_area_m2": 100}]})";
    const auto r = load_region(path);
    CHECK(r.buildings.size() == 2);
    CHECK_THAT(composite_factor(r).s, WithinRel(0.5 * 20.0 + 0.2 * std::sqrt(200.0) + 0.8 * 0.4, 1e-12));
    CHECK_THROWS_AS(load_region(dir / "missing.json"), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("Morphology - shipped regions fall in their classes")
{
    const std::filesystem::path data = CANYON_DATA_DIR;
    CHECK(classify(composite_factor(load_region(data / "regions" / "hcl.json")).s) == ScenarioClass::HCL);
    CHECK(classify(composite_factor(load_region(data / "regions" / "mcl.json")).s) == ScenarioClass::MCL);
    CHECK(classify(composite_factor(load_region(data / "regions" / "lcl.json")).s) == ScenarioClass::LCL);
}

TEST_CASE("Morphology - scale and permutation invariance")
{
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t)
    {
        ObservationRegion r{"r", 0.0, {}};
        const int n = 1 + static_cast<int>(u(gen) * 10);
        double total = 0.0;
        for (int i = 0; i < n; ++i)
        {
            r.buildings.push_back({5.0 + 60.0 * u(gen), 50.0 + 500.0 * u(gen)});
            total += r.buildings.back().footprint_area_m2;
        }
        r.region_area_m2 = total * (1.0 + u(gen));

        auto scaled = r;
        const double c = 0.01 + 50.0 * u(gen);
        for (auto &b : scaled.buildings)
            b.footprint_area_m2 *= c;
        scaled.region_area_m2 *= c;
        auto reversed = r;
        std::reverse(reversed.buildings.begin(), reversed.buildings.end());

        const auto f = composite_factor(r);
        CHECK_THAT(composite_factor(scaled).s, WithinRel(f.s, 1e-9));
        CHECK(composite_factor(reversed).s == f.s);
        CHECK_THAT(15.0 * f.s_norm + 30.0, WithinRel(f.s, 1e-12));
    }
}
