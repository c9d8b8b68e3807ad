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

#include "canyon/harness.hpp"
#include "canyon/errors.hpp"
#include "canyon/io.hpp"

#include "json.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace canyon
{
    namespace
    {
        DropRecord simulate_record(const ScenarioPreset &preset, const EnvFactor &env, const PathLossConfig &plcfg,
                                   const CampaignOptions &options, SeedRecord seed)
        {
            const std::size_t slot = static_cast<std::size_t>(seed.drop_index % preset.distance_grid_m.size());
            const double d = preset.distance_grid_m[slot];
            const LinkState state = preset.state_schedule[slot];

            const ChannelDrop drop = generate_drop(env, state, d, plcfg, seed, options.synthesis, options.table);
            const auto taps = cir(drop);
            const Eigen::VectorXcd h = transfer_function(std::span<const Tap>(taps), options.grid);

            const auto n = static_cast<Eigen::Index>(drop.mpc_count());
            Eigen::VectorXd aoa(n), eoa(n);
            Eigen::Index i = 0;
            for (const auto &c : drop.clusters)
                for (const auto &m : c.mpcs)
                {
                    aoa(i) = m.aoa_deg;
                    eoa(i) = m.eoa_deg;
                    ++i;
                }
            const Eigen::VectorXd powers = drop.linear_powers();

            DropRecord r;
            r.seed_record = seed;
            r.state = state;
            r.distance_m = d;
            r.pl_model_db = drop.pl_db;
            r.pl_ctf_db = pathloss_from_ctf(h);
            r.ds_ns = rms_delay_spread(pdp(taps));
            r.asa = angular_spread(aoa, powers);
            r.esa = angular_spread(eoa, powers);
            r.n_clusters = static_cast<int>(drop.clusters.size());
            r.n_mpc = drop.mpc_count();
            return r;
        }

        nlohmann::ordered_json preset_json(const ScenarioPreset &p)
        {
            nlohmann::ordered_json j;
            j["name"] = p.name;
            j["s_value"] = p.s_value;
            j["s_range"] = {p.s_range.first, p.s_range.second};
            j["d0_m"] = p.default_d0_m;
            j["distance_grid_m"] = p.distance_grid_m;
            auto states = nlohmann::ordered_json::array();
            for (auto s : p.state_schedule)
                states.push_back(to_string(s));
            j["states"] = std::move(states);
            return j;
        }

        std::string records_csv(const CampaignResult &r)
        {
            std::string csv = "drop_index,master_seed,state,distance_m,pl_model_db,pl_ctf_db,ds_ns,asa,asa_deg_equiv,"
                              "esa,esa_deg_equiv,n_clusters,n_mpc\n";
            constexpr double to_deg = 180.0 / std::numbers::pi;
            for (const auto &x : r.records)
                csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", x.seed_record.drop_index,
                                   x.seed_record.master_seed, to_string(x.state), format_number(x.distance_m),
                                   format_number(x.pl_model_db), format_number(x.pl_ctf_db), format_number(x.ds_ns),
                                   format_number(x.asa), format_number(x.asa * to_deg), format_number(x.esa),
                                   format_number(x.esa * to_deg), x.n_clusters, x.n_mpc);
            return csv;
        }

        std::string records_json(const CampaignResult &r)
        {
            auto arr = nlohmann::ordered_json::array();
            for (const auto &x : r.records)
            {
                nlohmann::ordered_json j;
                j["drop_index"] = x.seed_record.drop_index;
                j["master_seed"] = x.seed_record.master_seed;
                j["state"] = to_string(x.state);
                j["distance_m"] = x.distance_m;
                j["pl_model_db"] = x.pl_model_db;
                j["pl_ctf_db"] = x.pl_ctf_db;
                j["ds_ns"] = x.ds_ns;
                j["asa"] = x.asa;
                j["esa"] = x.esa;
                j["n_clusters"] = x.n_clusters;
                j["n_mpc"] = x.n_mpc;
                arr.push_back(std::move(j));
            }
            return arr.dump(1) + "\n";
        }

        std::string cdf_csv(const MetricCdf &c)
        {
            std::string csv = "value,probability\n";
            for (const auto &p : c.points)
                csv += format_number(p.value) + "," + format_number(p.probability) + "\n";
            return csv;
        }

        std::string cdf_json(const CampaignResult &r, const MetricCdf &c)
        {
            nlohmann::ordered_json j;
            j["scenario"] = r.preset.name;
            j["state"] = to_string(c.state);
            j["metric"] = to_string(c.metric);
            j["unit"] = c.metric == Metric::DelaySpread ? "ns" : "dimensionless";
            auto v = nlohmann::ordered_json::array(), p = nlohmann::ordered_json::array();
            for (const auto &x : c.points)
            {
                v.push_back(x.value);
                p.push_back(x.probability);
            }
            j["value"] = std::move(v);
            j["probability"] = std::move(p);
            return j.dump(1) + "\n";
        }

        std::vector<SweepRow> campaign_sweep(const CampaignResult &r)
        {
            const auto [lo, hi] = std::minmax_element(r.preset.distance_grid_m.begin(), r.preset.distance_grid_m.end());
            const double d_min = *lo, d_max = *hi > *lo ? *hi : *lo * 10.0;
            return sweep(d_min, d_max, 32, r.preset.env(r.options.weights), r.plcfg);
        }

        std::string summary_json(const CampaignResult &r)
        {
            nlohmann::ordered_json j;
            j["scenario"] = r.preset.name;
            j["n_drops"] = r.records.size();
            j["mean_abs_pl_error_db"] = r.mean_abs_pl_error_db();
            j["energy_bias_db"] = r.energy_bias_db();
            for (LinkState s : {LinkState::LOS, LinkState::NLOS})
            {
                if (r.count(s) == 0)
                    continue;
                nlohmann::ordered_json js;
                js["count"] = r.count(s);
                for (Metric m : {Metric::DelaySpread, Metric::Asa, Metric::Esa})
                {
                    const auto v = r.metric_values(s, m);
                    js[to_string(m)] = {{"q10", quantile(v, 0.1)}, {"q50", quantile(v, 0.5)}, {"q90", quantile(v, 0.9)}};
                }
                j["states"][to_string(s)] = std::move(js);
            }
            return j.dump(2) + "\n";
        }
    }

    ScenarioPreset ScenarioPreset::builtin(const std::string &name)
    {
        ScenarioPreset p;
        p.name = name;
        if (name == "HCL")
            p.s_range = {40.0, 50.0};
        else if (name == "MCL")
            p.s_range = {25.0, 35.0};
        else if (name == "LCL")
            p.s_range = {10.0, 20.0};
        else
            throw ConfigError("unknown preset '" + name + "' (expected HCL, MCL or LCL)");
        p.s_value = 0.5 * (p.s_range.first + p.s_range.second);
        p.default_d0_m = 50.0;
        p.distance_grid_m = default_distance_grid();
        p.state_schedule = schedule_by_breakpoint(p.distance_grid_m, p.default_d0_m);
        return p;
    }

    std::vector<double> ScenarioPreset::default_distance_grid()
    {
        return log_grid(10.0, 300.0, 16);
    }

    std::vector<LinkState> ScenarioPreset::schedule_by_breakpoint(const std::vector<double> &grid, double d0_m)
    {
        std::vector<LinkState> states;
        for (double d : grid)
            states.push_back(d < d0_m ? LinkState::LOS : LinkState::NLOS);
        return states;
    }

    ScenarioPreset ScenarioPreset::with_state(LinkState state) const
    {
        ScenarioPreset p = *this;
        std::fill(p.state_schedule.begin(), p.state_schedule.end(), state);
        return p;
    }

    EnvFactor ScenarioPreset::env(const EnvWeights &weights) const
    {
        return env_from_composite(s_value, weights);
    }

    void ScenarioPreset::validate() const
    {
        if (distance_grid_m.empty())
            throw ConfigError("preset '" + name + "': distance grid is empty");
        if (state_schedule.size() != distance_grid_m.size())
            throw ConfigError("preset '" + name + "': state schedule length differs from distance grid");
        for (double d : distance_grid_m)
            if (!(d > 0.0))
                throw ConfigError("preset '" + name + "': distances must be > 0");
        if (!(default_d0_m > 0.0))
            throw ConfigError("preset '" + name + "': d0_m must be > 0");
    }

    const std::vector<std::string> &builtin_preset_names()
    {
        static const std::vector<std::string> names{"HCL", "MCL", "LCL"};
        return names;
    }

    std::string to_string(Metric m)
    {
        switch (m)
        {
        case Metric::DelaySpread:
            return "ds";
        case Metric::Asa:
            return "asa";
        default:
            return "esa";
        }
    }

    std::vector<double> CampaignResult::metric_values(LinkState state, Metric metric) const
    {
        std::vector<double> v;
        for (const auto &r : records)
            if (r.state == state)
                v.push_back(metric == Metric::DelaySpread ? r.ds_ns : metric == Metric::Asa ? r.asa : r.esa);
        return v;
    }

    std::size_t CampaignResult::count(LinkState state) const
    {
        return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                      [&](const DropRecord &r) { return r.state == state; }));
    }

    double CampaignResult::mean_abs_pl_error_db() const
    {
        double acc = 0.0;
        for (const auto &r : records)
            acc += std::abs(r.pl_ctf_db - r.pl_model_db);
        return records.empty() ? 0.0 : acc / static_cast<double>(records.size());
    }

    double CampaignResult::energy_bias_db() const
    {
        double acc = 0.0;
        for (const auto &r : records)
            acc += std::pow(10.0, (r.pl_model_db - r.pl_ctf_db) / 10.0);
        return records.empty() ? 0.0 : 10.0 * std::log10(acc / static_cast<double>(records.size()));
    }

    CampaignResult run_campaign(const ScenarioPreset &preset, std::size_t n_drops, const PathLossConfig &plcfg,
                                std::uint64_t master_seed, const CampaignOptions &options)
    {
        if (n_drops < 1)
            throw std::invalid_argument("n_drops must be >= 1");
        preset.validate();

        CampaignResult result;
        result.preset = preset;
        result.plcfg = plcfg;
        if (!result.plcfg.breakpoint_distance_m)
            result.plcfg.breakpoint_distance_m = preset.default_d0_m;
        result.plcfg.validate();
        result.master_seed = master_seed;
        result.options = options;
        result.records.resize(n_drops);

        const EnvFactor env = preset.env(options.weights);
        const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(n_drops)));

        std::vector<std::exception_ptr> failures(workers);
        std::vector<std::size_t> failed_index(workers, n_drops);
        auto work = [&](unsigned w)
        {
            for (std::size_t i = w; i < n_drops; i += workers)
            {
                try
                {
                    result.records[i] = simulate_record(preset, env, result.plcfg, options, SeedRecord{master_seed, i});
                }
                catch (...)
                {
                    failures[w] = std::current_exception();
                    failed_index[w] = i;
                    return;
                }
            }
        };

        if (workers == 1)
            work(0);
        else
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work, w);
        }

        // Report the lowest failing drop index so the error does not depend on scheduling.
        const auto first = std::min_element(failed_index.begin(), failed_index.end());
        if (*first < n_drops)
        {
            const SeedRecord rec{master_seed, *first};
            try
            {
                std::rethrow_exception(failures[static_cast<std::size_t>(first - failed_index.begin())]);
            }
            catch (const std::exception &e)
            {
                throw GenerationError(std::string("drop generation failed: ") + e.what(), rec);
            }
        }

        for (LinkState s : {LinkState::LOS, LinkState::NLOS})
        {
            if (result.count(s) == 0)
                continue;
            for (Metric m : {Metric::DelaySpread, Metric::Asa, Metric::Esa})
            {
                const auto v = result.metric_values(s, m);
                result.cdfs.push_back({s, m, empirical_cdf(v)});
            }
        }
        return result;
    }

    double ModelComparison::rmse(LinkState state) const
    {
        for (const auto &s : per_state)
            if (s.state == state)
                return s.rmse_db;
        return 0.0;
    }

    ModelComparison compare_models(const ScenarioPreset &preset, std::size_t n_drops, const PathLossConfig &plcfg_a,
                                   const PathLossConfig &plcfg_b, std::uint64_t master_seed)
    {
        (void)master_seed; // the drop set's (distance, state) pairs depend only on the drop index
        if (n_drops < 1)
            throw std::invalid_argument("n_drops must be >= 1");
        preset.validate();
        PathLossConfig a = plcfg_a, b = plcfg_b;
        if (!a.breakpoint_distance_m)
            a.breakpoint_distance_m = preset.default_d0_m;
        if (!b.breakpoint_distance_m)
            b.breakpoint_distance_m = preset.default_d0_m;
        a.validate();
        b.validate();

        const EnvFactor env = preset.env();
        ModelComparison out;
        for (LinkState s : {LinkState::LOS, LinkState::NLOS})
        {
            StateRmse acc{s, 0, 0.0};
            for (std::size_t i = 0; i < n_drops; ++i)
            {
                const std::size_t slot = i % preset.distance_grid_m.size();
                if (preset.state_schedule[slot] != s)
                    continue;
                const double d = preset.distance_grid_m[slot];
                const double diff = pl(d, env, s, a) - pl(d, env, s, b);
                acc.rmse_db += diff * diff;
                ++acc.count;
            }
            acc.rmse_db = acc.count ? std::sqrt(acc.rmse_db / static_cast<double>(acc.count)) : 0.0;
            out.per_state.push_back(acc);
        }
        return out;
    }

    std::string Manifest::to_json() const
    {
        auto arr = nlohmann::ordered_json::array();
        for (const auto &e : entries)
            arr.push_back({{"artifact", e.artifact}, {"format", e.format}, {"path", e.path}, {"sha256", e.sha256}, {"bytes", e.bytes}});
        nlohmann::ordered_json doc;
        doc["files"] = std::move(arr);
        return doc.dump(2) + "\n";
    }

    std::string campaign_config_snapshot(const CampaignResult &result)
    {
        nlohmann::ordered_json j;
        j["preset"] = preset_json(result.preset);
        j["n_drops"] = result.records.size();
        j["master_seed"] = result.master_seed;
        j["pathloss"] = nlohmann::ordered_json::parse(pathloss_config_json(result.plcfg, result.preset.env(result.options.weights)));
        j["synthesis"] = {{"kappa", result.options.synthesis.kappa}, {"normalize", result.options.synthesis.normalize}};
        j["frequency_grid"] = {{"start_hz", result.options.grid.start_hz},
                               {"spacing_hz", result.options.grid.spacing_hz},
                               {"count", result.options.grid.count}};
        const auto &w = result.options.weights;
        j["weights"] = {{"height", w.height}, {"dispersion", w.dispersion}, {"density", w.density},
                        {"norm_center", w.norm_center}, {"norm_scale", w.norm_scale}};
        nlohmann::ordered_json table;
        for (const auto &key : result.options.table.coefficient_keys())
            table[key] = result.options.table.coefficient(key);
        j["table"] = std::move(table);
        nlohmann::ordered_json overrides = nlohmann::ordered_json::object();
        for (const auto &[key, value] : result.options.table.overrides())
            overrides[key] = value;
        j["table_overrides"] = std::move(overrides);
        return j.dump(2) + "\n";
    }

    Manifest export_campaign(const CampaignResult &result, const std::filesystem::path &dir,
                             const std::set<ExportFormat> &formats)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec || !std::filesystem::is_directory(dir))
            throw IoError("cannot create export directory '" + dir.string() + "'" + (ec ? ": " + ec.message() : ""));

        Manifest manifest;
        auto emit = [&](const std::string &artifact, const std::string &format, const std::string &name,
                        const std::string &content)
        {
            write_text_file(dir / name, content);
            manifest.entries.push_back({artifact, format, name, sha256_hex(content), content.size()});
        };

        const bool csv = formats.contains(ExportFormat::Csv);
        const bool json = formats.contains(ExportFormat::Json);
        const std::string scenario = result.preset.name.empty() ? "custom" : result.preset.name;

        if (csv)
            emit("records", "csv", "records.csv", records_csv(result));
        if (json)
            emit("records", "json", "records.json", records_json(result));

        for (const auto &c : result.cdfs)
        {
            const std::string stem = scenario + "_" + to_string(c.state) + "_" + to_string(c.metric) + "_cdf";
            const std::string artifact = "cdf:" + to_string(c.state) + ":" + to_string(c.metric);
            if (csv)
                emit(artifact, "csv", stem + ".csv", cdf_csv(c));
            if (json)
                emit(artifact, "json", stem + ".json", cdf_json(result, c));
        }

        const auto rows = campaign_sweep(result);
        if (csv)
        {
            emit("pathloss_sweep", "csv", scenario + "_pathloss_sweep.csv", sweep_csv(rows));
            emit("pathloss_sweep", "json", scenario + "_pathloss_sweep.config.json",
                 pathloss_config_json(result.plcfg, result.preset.env(result.options.weights)));
        }
        if (json)
        {
            emit("pathloss_sweep", "json", scenario + "_pathloss_sweep.json",
                 sweep_json(rows, result.plcfg, result.preset.env(result.options.weights)));
        }

        emit("summary", "json", "summary.json", summary_json(result));
        emit("config", "json", "config.json", campaign_config_snapshot(result));

        write_text_file(dir / "manifest.json", manifest.to_json());
        return manifest;
    }
}
