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

// canyon_sim: command-line front end.
//   exit 0 success, 1 validation failure, 2 config or input error, 3 generation error

#include "canyon/config.hpp"
#include "canyon/errors.hpp"
#include "canyon/harness.hpp"
#include "canyon/io.hpp"
#include "canyon/morphology.hpp"
#include "canyon/stats.hpp"
#include "canyon/synthesis.hpp"
#include "canyon/validation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace canyon;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_validation = 1;
    constexpr int exit_config = 2;
    constexpr int exit_generation = 3;

    struct Flags
    {
        std::string config;
        std::string out = "canyon_out";
        std::optional<std::uint64_t> seed;
        std::optional<unsigned> workers;
        std::string format;
        std::string s_convention;
        std::string preset;
        std::optional<double> s;
        std::optional<std::size_t> n_drops;
        std::string region;
        std::string filter;
        int verbosity = 0;
    };

    std::uint64_t parse_seed_env(const char *text)
    {
        try
        {
            std::size_t pos = 0;
            const std::string s(text);
            const unsigned long long v = std::stoull(s, &pos, 0);
            if (pos != s.size() || s.front() == '-')
                throw std::invalid_argument("trailing characters");
            return v;
        }
        catch (const std::exception &)
        {
            throw ConfigError(fmt::format("CANYON_SIM_SEED must be an unsigned 64-bit integer (got '{}')", text));
        }
    }

    // Config file first, then flags on top. Seed order: --seed, config master_seed, CANYON_SIM_SEED, 0.
    AppConfig resolve_config(const Flags &f)
    {
        AppConfig cfg = f.config.empty() ? AppConfig{} : load_config(f.config);
        if (!f.region.empty())
            cfg.region = load_region(f.region);
        if (f.s)
            cfg.s_value = *f.s;
        if (!f.preset.empty())
            cfg.preset = ScenarioPreset::builtin(f.preset);
        if (f.seed)
            cfg.master_seed = *f.seed;
        else if (!cfg.master_seed_given)
            if (const char *env = std::getenv("CANYON_SIM_SEED"); env && *env)
                cfg.master_seed = parse_seed_env(env);
        if (f.workers)
        {
            if (*f.workers == 0)
                throw ConfigError("--workers must be >= 1");
            cfg.workers = *f.workers;
        }
        if (!f.format.empty())
            cfg.formats = parse_formats(f.format);
        if (!f.s_convention.empty())
        {
            try
            {
                cfg.pathloss.s_convention = s_convention_from_string(f.s_convention);
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(std::string("--s-convention: ") + e.what());
            }
        }
        if (f.n_drops)
            cfg.n_drops = *f.n_drops;
        return cfg;
    }

    // d_0 from the config, else from the preset; otherwise NLOS evaluation is impossible.
    PathLossConfig pathloss_with_breakpoint(PathLossConfig pl, const std::optional<ScenarioPreset> &preset)
    {
        if (!pl.breakpoint_distance_m && preset)
            pl.breakpoint_distance_m = preset->default_d0_m;
        if (!pl.breakpoint_distance_m)
            throw ConfigError("missing required field 'pathloss.breakpoint_distance_m' (d_0) for NLOS path loss");
        try
        {
            pl.validate();
        }
        catch (const std::exception &e)
        {
            throw ConfigError(std::string("pathloss: ") + e.what());
        }
        return pl;
    }

    void print_extrapolation_warning(const EnvFactor &env)
    {
        if (is_extrapolated(env.s_norm))
            std::cerr << fmt::format("warning: S = {} (S~ = {}) lies outside the measured range; small-scale "
                                     "parameters are extrapolated\n",
                                     format_number(env.s), format_number(env.s_norm));
    }

    // ---- subcommands -------------------------------------------------------------------------

    int cmd_envfactor(const Flags &f)
    {
        const AppConfig cfg = resolve_config(f);
        const EnvFactor env = resolve_env(cfg);
        const ScenarioClass cls = classify(env.s);

        if (env.has_descriptors())
        {
            fmt::print("h_height = {} m\n", format_number(env.h_height));
            fmt::print("h_std    = {} m\n", format_number(env.h_std));
            fmt::print("rho      = {}\n", format_number(env.rho));
        }
        fmt::print("S        = {}\n", format_number(env.s));
        fmt::print("S~       = {}\n", format_number(env.s_norm));
        fmt::print("class    = {}\n", to_string(cls));
        print_extrapolation_warning(env);

        auto opt = [&](double v) { return std::isnan(v) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v); };
        nlohmann::ordered_json doc;
        if (cfg.region)
            doc["region"] = cfg.region->name;
        doc["h_height_m"] = opt(env.h_height);
        doc["h_std_m"] = opt(env.h_std);
        doc["rho"] = opt(env.rho);
        doc["s"] = env.s;
        doc["s_norm"] = env.s_norm;
        doc["class"] = to_string(cls);
        doc["extrapolated"] = is_extrapolated(env.s_norm);
        doc["weights"] = {{"height", cfg.weights.height},
                          {"dispersion", cfg.weights.dispersion},
                          {"density", cfg.weights.density},
                          {"norm_center", cfg.weights.norm_center},
                          {"norm_scale", cfg.weights.norm_scale}};
        write_text_file(fs::path(f.out) / "envfactor.json", doc.dump(2) + "\n");
        return exit_ok;
    }

    int cmd_pathloss(const Flags &f)
    {
        const AppConfig cfg = resolve_config(f);
        const EnvFactor env = resolve_env(cfg);
        const PathLossConfig pl = pathloss_with_breakpoint(cfg.pathloss, cfg.preset);
        std::vector<SweepRow> rows;
        try
        {
            rows = sweep(cfg.sweep_d_min_m, cfg.sweep_d_max_m, cfg.sweep_points, env, pl);
        }
        catch (const std::exception &e)
        {
            throw ConfigError(std::string("sweep: ") + e.what());
        }

        fmt::print("s_convention = {} (S = {}, S~ = {}, effective S = {})\n", to_string(pl.s_convention),
                   format_number(env.s), format_number(env.s_norm), format_number(effective_s(env, pl)));
        print_extrapolation_warning(env);

        const fs::path out(f.out);
        std::vector<std::string> written;
        if (cfg.formats.contains(ExportFormat::Csv))
        {
            write_text_file(out / "pathloss_sweep.csv", sweep_csv(rows));
            write_text_file(out / "pathloss_sweep.config.json", pathloss_config_json(pl, env));
            written.insert(written.end(), {"pathloss_sweep.csv", "pathloss_sweep.config.json"});
        }
        if (cfg.formats.contains(ExportFormat::Json))
        {
            write_text_file(out / "pathloss_sweep.json", sweep_json(rows, pl, env));
            written.push_back("pathloss_sweep.json");
        }
        fmt::print("{} distances from {} to {} m\n", rows.size(), format_number(cfg.sweep_d_min_m),
                   format_number(cfg.sweep_d_max_m));
        if (f.verbosity > 0)
            for (const auto &w : written)
                fmt::print("wrote {}\n", (out / w).string());
        return exit_ok;
    }

    int cmd_generate(const Flags &f)
    {
        const AppConfig cfg = resolve_config(f);
        const EnvFactor env = resolve_env(cfg);
        if (cfg.n_drops == 0)
            throw ConfigError("n_drops must be >= 1");

        // Either a fixed (state, distance) or the preset's schedule.
        std::vector<std::pair<LinkState, double>> schedule;
        if (cfg.generate_state || cfg.generate_distance_m)
        {
            if (!cfg.generate_state || !cfg.generate_distance_m)
                throw ConfigError("generate requires both 'generate.state' and 'generate.distance_m'");
            if (!(*cfg.generate_distance_m > 0.0))
                throw ConfigError("'generate.distance_m' must be > 0");
            schedule.emplace_back(*cfg.generate_state, *cfg.generate_distance_m);
        }
        else if (cfg.preset)
        {
            for (std::size_t i = 0; i < cfg.preset->distance_grid_m.size(); ++i)
                schedule.emplace_back(cfg.preset->state_schedule[i], cfg.preset->distance_grid_m[i]);
        }
        else
            throw ConfigError("generate requires 'generate.state' and 'generate.distance_m', or a 'preset'");

        PathLossConfig pl = cfg.pathloss;
        const bool any_nlos = std::any_of(schedule.begin(), schedule.end(),
                                          [](const auto &e) { return e.first == LinkState::NLOS; });
        if (any_nlos)
            pl = pathloss_with_breakpoint(pl, cfg.preset);
        else if (!pl.breakpoint_distance_m && cfg.preset)
            pl.breakpoint_distance_m = cfg.preset->default_d0_m;

        print_extrapolation_warning(env);

        const fs::path out(f.out);
        Manifest manifest;
        std::string mpcs = mpc_csv_header();
        double sum_cl = 0.0, sum_mpc = 0.0, sum_ds = 0.0;
        for (std::size_t i = 0; i < cfg.n_drops; ++i)
        {
            const auto &[state, d] = schedule[i % schedule.size()];
            const SeedRecord rec{cfg.master_seed, i};
            ChannelDrop drop;
            double ds = 0.0;
            try
            {
                drop = generate_drop(env, state, d, pl, rec, cfg.synthesis, cfg.table);
                ds = rms_delay_spread(pdp(cir(drop)));
                if (cfg.array)
                    cir(drop, *cfg.array); // geometry validated against the drop
            }
            catch (const GenerationError &)
            {
                throw;
            }
            catch (const std::exception &e)
            {
                throw GenerationError(std::string("drop generation failed: ") + e.what(), rec);
            }
            sum_cl += static_cast<double>(drop.clusters.size());
            sum_mpc += static_cast<double>(drop.mpc_count());
            sum_ds += ds;

            const std::string name = fmt::format("drops/drop_{:05d}.json", i);
            const std::string body = drop_to_json(drop);
            write_text_file(out / name, body);
            manifest.entries.push_back({"drop", "json", name, sha256_hex(body), body.size()});
            append_mpc_rows(mpcs, drop);
        }
        // mpc rows carry the drop index from the seed record
        write_text_file(out / "mpcs.csv", mpcs);
        manifest.entries.push_back({"mpcs", "csv", "mpcs.csv", sha256_hex(mpcs), mpcs.size()});
        write_text_file(out / "manifest.json", manifest.to_json());

        const double n = static_cast<double>(cfg.n_drops);
        fmt::print("drops             = {}\n", cfg.n_drops);
        fmt::print("mean N_cl         = {:.4f}\n", sum_cl / n);
        fmt::print("mean N_MPC        = {:.4f}\n", sum_mpc / n);
        fmt::print("mean DS           = {:.4f} ns\n", sum_ds / n);
        if (f.verbosity > 0)
            fmt::print("wrote {} drops to {}\n", cfg.n_drops, (out / "drops").string());
        return exit_ok;
    }

    int cmd_campaign(const Flags &f)
    {
        const AppConfig cfg = resolve_config(f);
        ScenarioPreset preset;
        if (cfg.preset)
        {
            preset = *cfg.preset;
            if (cfg.region || cfg.s_value)
                preset.s_value = resolve_env(cfg).s;
        }
        else if (cfg.region || cfg.s_value)
        {
            preset.name = "custom";
            preset.s_value = resolve_env(cfg).s;
            preset.s_range = {preset.s_value, preset.s_value};
            preset.distance_grid_m = ScenarioPreset::default_distance_grid();
            preset.state_schedule = ScenarioPreset::schedule_by_breakpoint(
                preset.distance_grid_m, cfg.pathloss.breakpoint_distance_m.value_or(preset.default_d0_m));
        }
        else
            throw ConfigError("campaign requires 'preset' (or --preset), 'region' or 's'");
        if (cfg.n_drops == 0)
            throw ConfigError("n_drops must be >= 1");
        try
        {
            preset.validate();
            cfg.pathloss.validate();
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            throw ConfigError(e.what());
        }

        CampaignOptions opt;
        opt.synthesis = cfg.synthesis;
        opt.table = cfg.table;
        opt.weights = cfg.weights;
        opt.workers = cfg.workers;
        print_extrapolation_warning(preset.env(cfg.weights));

        const CampaignResult result = run_campaign(preset, cfg.n_drops, cfg.pathloss, cfg.master_seed, opt);
        const Manifest manifest = export_campaign(result, f.out, cfg.formats);

        fmt::print("campaign {} (S = {}), {} drops, seed {}\n", preset.name, format_number(preset.s_value),
                   result.records.size(), cfg.master_seed);
        fmt::print("{:<6}{:<5}{:>8}{:>12}{:>12}{:>12}\n", "state", "", "count", "p10", "p50", "p90");
        for (LinkState st : {LinkState::LOS, LinkState::NLOS})
        {
            const std::size_t count = result.count(st);
            if (count == 0)
                continue;
            for (Metric m : {Metric::DelaySpread, Metric::Asa, Metric::Esa})
            {
                const auto v = result.metric_values(st, m);
                fmt::print("{:<6}{:<5}{:>8}{:>12.4f}{:>12.4f}{:>12.4f}\n", to_string(st), to_string(m), count,
                           quantile(v, 0.1), quantile(v, 0.5), quantile(v, 0.9));
            }
        }
        fmt::print("energy bias (model vs synthesized) = {:.3f} dB\n", result.energy_bias_db());
        fmt::print("{} files listed in {}\n", manifest.entries.size(), (fs::path(f.out) / "manifest.json").string());
        if (f.verbosity > 0)
            for (const auto &e : manifest.entries)
                fmt::print("  {}  {}\n", e.sha256.substr(0, 16), e.path);
        return exit_ok;
    }

    int cmd_validate(const Flags &f)
    {
        ValidationOptions opt;
        opt.filter = f.filter;
        if (!f.config.empty())
        {
            const AppConfig cfg = resolve_config(f);
            opt.table = cfg.table;
            opt.workers = cfg.workers;
        }
        else if (f.workers)
            opt.workers = std::max(1u, *f.workers);
        if (!opt.filter.empty())
        {
            const auto suites = validation_suites();
            if (std::none_of(suites.begin(), suites.end(), [&](const std::string &s) { return s.rfind(opt.filter, 0) == 0; }))
                throw ConfigError(fmt::format("--filter '{}' matches no suite (known: morphology, pathloss, smallscale, "
                                              "synthesis, stats, harness)",
                                              opt.filter));
        }

        const ValidationReport report = run_validation(opt);
        for (const auto &r : report.results)
        {
            fmt::print("{} {}.{}", r.passed ? "PASS" : "FAIL", r.suite, r.name);
            if (f.verbosity > 0 || !r.passed)
                fmt::print("  ({:.2f} s) {}", r.seconds, r.detail);
            fmt::print("\n");
        }
        write_text_file(fs::path(f.out) / "validation_report.json", report.to_json());
        const auto failed = std::count_if(report.results.begin(), report.results.end(), [](const auto &r) { return !r.passed; });
        fmt::print("{} properties, {} failed\n", report.results.size(), failed);
        return report.all_passed() ? exit_ok : exit_validation;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Environment-conditioned channel simulator for street-canyon intersections"};
    app.require_subcommand(1, 1);
    Flags f;

    auto common = [&](CLI::App *sub)
    {
        sub->add_option("--config", f.config, "JSON configuration file");
        sub->add_option("--out", f.out, "Output directory")->capture_default_str();
        sub->add_option("--seed", f.seed, "Master seed (fallback: CANYON_SIM_SEED, then 0)");
        sub->add_option("--workers", f.workers, "Worker threads (results do not depend on it)");
        sub->add_option("--format", f.format, "Export format")->check(CLI::IsMember({"csv", "json", "both"}));
        sub->add_option("--s-convention", f.s_convention, "S used by the path-loss model")
            ->check(CLI::IsMember({"raw", "normalized"}));
        sub->add_option("--s", f.s, "Composite environment factor S");
        sub->add_option("--preset", f.preset, "Built-in scenario preset")->check(CLI::IsMember({"HCL", "MCL", "LCL"}));
        sub->add_option("--region", f.region, "Region file (JSON)");
        sub->add_flag("-v,--verbose", f.verbosity, "More output");
    };

    auto *envfactor = app.add_subcommand("envfactor", "Compute the composite environment factor of a region");
    common(envfactor);
    envfactor->add_option("region_file", f.region, "Region file (JSON)");
    auto *pathloss = app.add_subcommand("pathloss", "Sweep the path-loss model over distance");
    common(pathloss);
    auto *generate = app.add_subcommand("generate", "Generate channel drops");
    common(generate);
    generate->add_option("-n,--drops", f.n_drops, "Number of drops");
    auto *campaign = app.add_subcommand("campaign", "Run a scenario campaign and export statistics");
    common(campaign);
    campaign->add_option("-n,--drops", f.n_drops, "Number of drops");
    auto *validate = app.add_subcommand("validate", "Run the property suites");
    common(validate);
    validate->add_option("--filter", f.filter, "Run only suites whose name starts with this prefix");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*envfactor)
            return cmd_envfactor(f);
        if (*pathloss)
            return cmd_pathloss(f);
        if (*generate)
            return cmd_generate(f);
        if (*campaign)
            return cmd_campaign(f);
        return cmd_validate(f);
    }
    catch (const GenerationError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_generation;
    }
    catch (const TableError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_generation;
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const IoError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
}
