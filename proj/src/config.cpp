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

#include "canyon/config.hpp"
#include "canyon/errors.hpp"
#include "canyon/io.hpp"

#include "json.hpp"

#include <initializer_list>

namespace canyon
{
    namespace
    {
        using json = nlohmann::json;

        void reject_unknown(const json &obj, std::initializer_list<const char *> allowed, const std::string &where)
        {
            for (const auto &[key, value] : obj.items())
            {
                bool ok = false;
                for (const char *a : allowed)
                    ok = ok || key == a;
                if (!ok)
                    throw ConfigError("unknown config field '" + where + key + "'");
            }
        }

        double number(const json &obj, const char *key, const std::string &where)
        {
            const auto &v = obj.at(key);
            if (!v.is_number())
                throw ConfigError("config field '" + where + key + "' must be a number");
            return v.get<double>();
        }

        template <typename T>
        T unsigned_integer(const json &obj, const char *key, const std::string &where)
        {
            const auto &v = obj.at(key);
            if (!v.is_number_unsigned())
                throw ConfigError("config field '" + where + key + "' must be a non-negative integer");
            return static_cast<T>(v.get<std::uint64_t>());
        }

        std::string text(const json &obj, const char *key, const std::string &where)
        {
            const auto &v = obj.at(key);
            if (!v.is_string())
                throw ConfigError("config field '" + where + key + "' must be a string");
            return v.get<std::string>();
        }

        LinkState state_field(const json &obj, const char *key, const std::string &where)
        {
            try
            {
                return link_state_from_string(text(obj, key, where));
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError("config field '" + where + key + "': " + e.what());
            }
        }

        ScenarioPreset parse_preset(const json &j)
        {
            if (j.is_string())
                return ScenarioPreset::builtin(j.get<std::string>());
            if (!j.is_object())
                throw ConfigError("config field 'preset' must be a preset name or an object");
            reject_unknown(j, {"name", "s_value", "s_range", "d0_m", "distance_grid_m", "states", "state"}, "preset.");

            ScenarioPreset p;
            const std::string name = j.contains("name") ? text(j, "name", "preset.") : "custom";
            bool is_builtin = false;
            for (const auto &b : builtin_preset_names())
                is_builtin = is_builtin || b == name;
            if (is_builtin)
                p = ScenarioPreset::builtin(name);
            else
            {
                p.name = name;
                p.distance_grid_m = ScenarioPreset::default_distance_grid();
                if (!j.contains("s_value"))
                    throw ConfigError("custom preset '" + name + "' requires 'preset.s_value'");
            }
            if (j.contains("s_value"))
                p.s_value = number(j, "s_value", "preset.");
            if (j.contains("s_range"))
            {
                const auto &r = j.at("s_range");
                if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
                    throw ConfigError("config field 'preset.s_range' must be [low, high]");
                p.s_range = {r[0].get<double>(), r[1].get<double>()};
            }
            else if (!is_builtin)
                p.s_range = {p.s_value, p.s_value};
            if (j.contains("d0_m"))
                p.default_d0_m = number(j, "d0_m", "preset.");
            if (j.contains("distance_grid_m"))
            {
                const auto &g = j.at("distance_grid_m");
                if (!g.is_array() || g.empty())
                    throw ConfigError("config field 'preset.distance_grid_m' must be a non-empty array");
                p.distance_grid_m.clear();
                for (const auto &d : g)
                {
                    if (!d.is_number())
                        throw ConfigError("config field 'preset.distance_grid_m' must contain numbers");
                    p.distance_grid_m.push_back(d.get<double>());
                }
            }
            if (j.contains("states"))
            {
                const auto &s = j.at("states");
                if (!s.is_array() || s.size() != p.distance_grid_m.size())
                    throw ConfigError("config field 'preset.states' must list one state per grid distance");
                p.state_schedule.clear();
                for (std::size_t i = 0; i < s.size(); ++i)
                {
                    if (!s[i].is_string())
                        throw ConfigError("config field 'preset.states' must contain \"LOS\"/\"NLOS\" strings");
                    try
                    {
                        p.state_schedule.push_back(link_state_from_string(s[i].get<std::string>()));
                    }
                    catch (const std::invalid_argument &e)
                    {
                        throw ConfigError(std::string("config field 'preset.states': ") + e.what());
                    }
                }
            }
            else
                p.state_schedule = ScenarioPreset::schedule_by_breakpoint(p.distance_grid_m, p.default_d0_m);
            if (j.contains("state"))
                p = p.with_state(state_field(j, "state", "preset."));
            p.validate();
            return p;
        }
    }

    std::set<ExportFormat> parse_formats(const std::string &value)
    {
        if (value == "csv")
            return {ExportFormat::Csv};
        if (value == "json")
            return {ExportFormat::Json};
        if (value == "both")
            return {ExportFormat::Csv, ExportFormat::Json};
        throw ConfigError("unknown export format '" + value + "' (expected csv, json or both)");
    }

    AppConfig parse_config(const std::string &json_text, const std::filesystem::path &base_dir, const std::string &source)
    {
        json doc;
        try
        {
            doc = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(source + ": malformed JSON: " + e.what());
        }
        if (!doc.is_object())
            throw ConfigError(source + ": configuration must be a JSON object");

        reject_unknown(doc,
                       {"region_file", "region", "s", "preset", "weights", "pathloss", "sweep", "synthesis",
                        "table_overrides", "table_overrides_file", "n_drops", "master_seed", "workers", "generate",
                        "export"},
                       "");

        AppConfig cfg;
        try
        {
            if (doc.contains("region_file"))
            {
                std::filesystem::path p = text(doc, "region_file", "");
                cfg.region = load_region(p.is_absolute() ? p : base_dir / p);
            }
            if (doc.contains("region"))
                cfg.region = parse_region(doc.at("region").dump(), source + ":region");
            if (doc.contains("s"))
                cfg.s_value = number(doc, "s", "");
            if (doc.contains("preset"))
                cfg.preset = parse_preset(doc.at("preset"));

            if (doc.contains("weights"))
            {
                const auto &w = doc.at("weights");
                reject_unknown(w, {"height", "dispersion", "density", "norm_center", "norm_scale"}, "weights.");
                if (w.contains("height"))
                    cfg.weights.height = number(w, "height", "weights.");
                if (w.contains("dispersion"))
                    cfg.weights.dispersion = number(w, "dispersion", "weights.");
                if (w.contains("density"))
                    cfg.weights.density = number(w, "density", "weights.");
                if (w.contains("norm_center"))
                    cfg.weights.norm_center = number(w, "norm_center", "weights.");
                if (w.contains("norm_scale"))
                    cfg.weights.norm_scale = number(w, "norm_scale", "weights.");
                if (!(cfg.weights.norm_scale != 0.0))
                    throw ConfigError("config field 'weights.norm_scale' must be non-zero");
            }

            if (doc.contains("pathloss"))
            {
                const auto &p = doc.at("pathloss");
                reject_unknown(p, {"carrier_frequency_ghz", "rx_antenna_height_m", "breakpoint_distance_m", "k_a", "k_b",
                                   "k_c", "k_d", "s_convention"},
                               "pathloss.");
                auto &pl = cfg.pathloss;
                if (p.contains("carrier_frequency_ghz"))
                    pl.carrier_frequency_ghz = number(p, "carrier_frequency_ghz", "pathloss.");
                if (p.contains("rx_antenna_height_m"))
                    pl.rx_antenna_height_m = number(p, "rx_antenna_height_m", "pathloss.");
                if (p.contains("breakpoint_distance_m"))
                    pl.breakpoint_distance_m = number(p, "breakpoint_distance_m", "pathloss.");
                if (p.contains("k_a"))
                    pl.k_a = number(p, "k_a", "pathloss.");
                if (p.contains("k_b"))
                    pl.k_b = number(p, "k_b", "pathloss.");
                if (p.contains("k_c"))
                    pl.k_c = number(p, "k_c", "pathloss.");
                if (p.contains("k_d"))
                    pl.k_d = number(p, "k_d", "pathloss.");
                if (p.contains("s_convention"))
                    pl.s_convention = s_convention_from_string(text(p, "s_convention", "pathloss."));
                pl.validate();
            }

            if (doc.contains("sweep"))
            {
                const auto &s = doc.at("sweep");
                reject_unknown(s, {"d_min_m", "d_max_m", "n_points"}, "sweep.");
                if (s.contains("d_min_m"))
                    cfg.sweep_d_min_m = number(s, "d_min_m", "sweep.");
                if (s.contains("d_max_m"))
                    cfg.sweep_d_max_m = number(s, "d_max_m", "sweep.");
                if (s.contains("n_points"))
                    cfg.sweep_points = unsigned_integer<std::size_t>(s, "n_points", "sweep.");
            }

            if (doc.contains("synthesis"))
            {
                const auto &s = doc.at("synthesis");
                reject_unknown(s, {"kappa", "normalize", "array"}, "synthesis.");
                if (s.contains("kappa"))
                    cfg.synthesis.kappa = number(s, "kappa", "synthesis.");
                if (!(cfg.synthesis.kappa >= 0.0))
                    throw ConfigError("config field 'synthesis.kappa' must be >= 0");
                if (s.contains("normalize"))
                {
                    if (!s.at("normalize").is_boolean())
                        throw ConfigError("config field 'synthesis.normalize' must be a boolean");
                    cfg.synthesis.normalize = s.at("normalize").get<bool>();
                }
                if (s.contains("array"))
                {
                    const auto &a = s.at("array");
                    reject_unknown(a, {"rows", "cols", "spacing_wavelengths"}, "synthesis.array.");
                    ArrayGeometry g;
                    if (a.contains("rows"))
                        g.rows = unsigned_integer<Eigen::Index>(a, "rows", "synthesis.array.");
                    if (a.contains("cols"))
                        g.cols = unsigned_integer<Eigen::Index>(a, "cols", "synthesis.array.");
                    if (a.contains("spacing_wavelengths"))
                        g.spacing_wavelengths = number(a, "spacing_wavelengths", "synthesis.array.");
                    g.validate();
                    cfg.array = g;
                }
            }

            if (doc.contains("table_overrides_file"))
            {
                std::filesystem::path p = text(doc, "table_overrides_file", "");
                cfg.table = apply_table_overrides(cfg.table, read_text_file(p.is_absolute() ? p : base_dir / p));
            }
            if (doc.contains("table_overrides"))
                cfg.table = apply_table_overrides(cfg.table, doc.at("table_overrides").dump());

            if (doc.contains("n_drops"))
                cfg.n_drops = unsigned_integer<std::size_t>(doc, "n_drops", "");
            if (doc.contains("master_seed"))
            {
                cfg.master_seed = unsigned_integer<std::uint64_t>(doc, "master_seed", "");
                cfg.master_seed_given = true;
            }
            if (doc.contains("workers"))
            {
                cfg.workers = unsigned_integer<unsigned>(doc, "workers", "");
                if (cfg.workers == 0)
                    throw ConfigError("config field 'workers' must be >= 1");
            }

            if (doc.contains("generate"))
            {
                const auto &g = doc.at("generate");
                reject_unknown(g, {"state", "distance_m"}, "generate.");
                if (g.contains("state"))
                    cfg.generate_state = state_field(g, "state", "generate.");
                if (g.contains("distance_m"))
                    cfg.generate_distance_m = number(g, "distance_m", "generate.");
            }

            if (doc.contains("export"))
            {
                const auto &e = doc.at("export");
                reject_unknown(e, {"format"}, "export.");
                if (e.contains("format"))
                    cfg.formats = parse_formats(text(e, "format", "export."));
            }
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            throw ConfigError(source + ": " + e.what());
        }
        return cfg;
    }

    AppConfig load_config(const std::filesystem::path &path)
    {
        std::string content;
        try
        {
            content = read_text_file(path);
        }
        catch (const IoError &e)
        {
            throw ConfigError(e.what());
        }
        return parse_config(content, path.parent_path().empty() ? "." : path.parent_path(), path.string());
    }

    EnvFactor resolve_env(const AppConfig &cfg)
    {
        if (cfg.region)
            return composite_factor(*cfg.region, cfg.weights);
        if (cfg.s_value)
            return env_from_composite(*cfg.s_value, cfg.weights);
        if (cfg.preset)
            return cfg.preset->env(cfg.weights);
        throw ConfigError("no environment given: set one of 'region_file', 'region', 's' or 'preset'");
    }
}
