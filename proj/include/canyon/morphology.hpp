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

#ifndef canyon_morphology_H
#define canyon_morphology_H

#include <filesystem>
#include <string>
#include <vector>

namespace canyon
{
    struct Building
    {
        double height_m = 0.0;          // H_i
        double footprint_area_m2 = 0.0; // s_i
    };

    // Buildings inside the roadside observation region of one intersection.
    struct ObservationRegion
    {
        std::string name;
        double region_area_m2 = 0.0;
        std::vector<Building> buildings;
    };

    // Weights of the composite factor and the affine normalization S~ = (S - center) / scale.
    struct EnvWeights
    {
        double height = 0.5;
        double dispersion = 0.2;
        double density = 0.8;
        double norm_center = 30.0;
        double norm_scale = 15.0;
    };

    // Morphology descriptors and the composite environmental factor.
    // When built from a bare S value (scenario presets), the three descriptors are NaN.
    struct EnvFactor
    {
        double h_height = 0.0;
        double h_std = 0.0;
        double rho = 0.0;
        double s = 0.0;
        double s_norm = 0.0;

        bool has_descriptors() const;
    };

    // Scenario classes of the measured intersections (S ranges 40-50, 25-35, 10-20).
    enum class ScenarioClass
    {
        HCL,
        MCL,
        LCL,
        OutOfRange
    };

    std::string to_string(ScenarioClass c);

    // Throws std::invalid_argument listing every offending building / field.
    void validate(const ObservationRegion &region);

    double weighted_mean_height(const ObservationRegion &region);

    // Unweighted squared deviations around the area-weighted mean, divided by (n - 1).
    // A single building has zero dispersion.
    double height_dispersion(const ObservationRegion &region);

    double building_density(const ObservationRegion &region);

    EnvFactor composite_factor(const ObservationRegion &region, const EnvWeights &weights = {});

    double normalize_s(double s, const EnvWeights &weights = {});

    // EnvFactor carrying only S and S~ (descriptors NaN).
    EnvFactor env_from_composite(double s, const EnvWeights &weights = {});

    ScenarioClass classify(double s);

    // True when S lies outside the measured span 10..50, i.e. |S~| > 4/3 with default weights.
    bool is_extrapolated(double s_norm);

    // Parses a region JSON document; throws ConfigError with field diagnostics.
    ObservationRegion parse_region(const std::string &json_text, const std::string &source = "<string>");
    ObservationRegion load_region(const std::filesystem::path &path);
}

#endif
