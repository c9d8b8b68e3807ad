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

#include "canyon/morphology.hpp"
#include "canyon/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace canyon
{
    namespace
    {
        // Accumulation order is fixed by sorting on (height, area), so results do not depend on list order.
        std::vector<Building> sorted_buildings(const ObservationRegion &region)
        {
            if (region.buildings.empty())
                throw std::domain_error("no buildings");
            std::vector<Building> b = region.buildings;
            std::sort(b.begin(), b.end(), [](const Building &x, const Building &y)
                      { return x.height_m != y.height_m ? x.height_m < y.height_m
                                                        : x.footprint_area_m2 < y.footprint_area_m2; });
            return b;
        }

        double mean_height_sorted(const std::vector<Building> &b)
        {
            double num = 0.0, den = 0.0;
            for (const auto &x : b)
            {
                num += x.height_m * x.footprint_area_m2;
                den += x.footprint_area_m2;
            }
            if (!(den > 0.0))
                throw std::domain_error("total footprint area must be positive");
            return num / den;
        }

        std::size_t line_of_offset(const std::string &text, std::size_t offset)
        {
            offset = std::min(offset, text.size());
            return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
        }
    }

    bool EnvFactor::has_descriptors() const
    {
        return !std::isnan(h_height);
    }

    std::string to_string(ScenarioClass c)
    {
        switch (c)
        {
        case ScenarioClass::HCL:
            return "HCL";
        case ScenarioClass::MCL:
            return "MCL";
        case ScenarioClass::LCL:
            return "LCL";
        default:
            return "out-of-range";
        }
    }

    void validate(const ObservationRegion &region)
    {
        if (region.buildings.empty())
            throw std::invalid_argument("no buildings");
        std::ostringstream problems;
        if (!(region.region_area_m2 > 0.0) || !std::isfinite(region.region_area_m2))
            problems << "region_area_m2 must be > 0 (got " << region.region_area_m2 << "); ";
        for (std::size_t i = 0; i < region.buildings.size(); ++i)
        {
            const auto &b = region.buildings[i];
            if (!(b.height_m > 0.0) || !std::isfinite(b.height_m))
                problems << "buildings[" << i << "].height_m must be > 0 (got " << b.height_m << "); ";
            if (!(b.footprint_area_m2 > 0.0) || !std::isfinite(b.footprint_area_m2))
                problems << "buildings[" << i << "].footprint_area_m2 must be > 0 (got " << b.footprint_area_m2 << "); ";
        }
        const std::string msg = problems.str();
        if (!msg.empty())
            throw std::invalid_argument(msg.substr(0, msg.size() - 2));
    }

    double weighted_mean_height(const ObservationRegion &region)
    {
        return mean_height_sorted(sorted_buildings(region));
    }

    double height_dispersion(const ObservationRegion &region)
    {
        const auto b = sorted_buildings(region);
        if (b.size() == 1)
            return 0.0;
        const double mean = mean_height_sorted(b);
        double acc = 0.0;
        for (const auto &x : b)
            acc += (x.height_m - mean) * (x.height_m - mean);
        return std::sqrt(acc / static_cast<double>(b.size() - 1));
    }

    double building_density(const ObservationRegion &region)
    {
        if (!(region.region_area_m2 > 0.0))
            throw std::domain_error("region area must be positive");
        const auto b = sorted_buildings(region);
        double total = 0.0;
        for (const auto &x : b)
            total += x.footprint_area_m2;
        return total / region.region_area_m2;
    }

    EnvFactor composite_factor(const ObservationRegion &region, const EnvWeights &weights)
    {
        EnvFactor f;
        f.h_height = weighted_mean_height(region);
        f.h_std = height_dispersion(region);
        f.rho = building_density(region);
        f.s = weights.height * f.h_height + weights.dispersion * f.h_std + weights.density * f.rho;
        f.s_norm = normalize_s(f.s, weights);
        return f;
    }

    double normalize_s(double s, const EnvWeights &weights)
    {
        return (s - weights.norm_center) / weights.norm_scale;
    }

    EnvFactor env_from_composite(double s, const EnvWeights &weights)
    {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        return EnvFactor{nan, nan, nan, s, normalize_s(s, weights)};
    }

    ScenarioClass classify(double s)
    {
        if (s >= 40.0 && s <= 50.0)
            return ScenarioClass::HCL;
        if (s >= 25.0 && s <= 35.0)
            return ScenarioClass::MCL;
        if (s >= 10.0 && s <= 20.0)
            return ScenarioClass::LCL;
        return ScenarioClass::OutOfRange;
    }

    bool is_extrapolated(double s_norm)
    {
        return std::abs(s_norm) > 4.0 / 3.0 + 1e-12;
    }

    ObservationRegion parse_region(const std::string &json_text, const std::string &source)
    {
        nlohmann::json doc;
        try
        {
            doc = nlohmann::json::parse(json_text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ConfigError(source + ":" + std::to_string(line_of_offset(json_text, e.byte)) +
                              ": malformed JSON: " + e.what());
        }

        auto require_number = [&](const nlohmann::json &obj, const char *key, const std::string &where) -> double
        {
            if (!obj.is_object() || !obj.contains(key))
                throw ConfigError(source + ": missing field '" + where + key + "'");
            const auto &v = obj.at(key);
            if (!v.is_number())
                throw ConfigError(source + ": field '" + where + key + "' must be a number");
            return v.get<double>();
        };

        if (!doc.is_object())
            throw ConfigError(source + ": region document must be a JSON object");

        ObservationRegion region;
        region.name = doc.value("name", std::string{});
        region.region_area_m2 = require_number(doc, "region_area_m2", "");
        if (!doc.contains("buildings") || !doc.at("buildings").is_array())
            throw ConfigError(source + ": missing array field 'buildings'");
        const auto &list = doc.at("buildings");
        for (std::size_t i = 0; i < list.size(); ++i)
        {
            const std::string where = "buildings[" + std::to_string(i) + "].";
            region.buildings.push_back(Building{require_number(list[i], "height_m", where),
                                                require_number(list[i], "footprint_area_m2", where)});
        }

        try
        {
            validate(region);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(source + ": " + e.what());
        }
        return region;
    }

    ObservationRegion load_region(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open region file '" + path.string() + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_region(buf.str(), path.string());
    }
}
