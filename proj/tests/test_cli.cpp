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

#include "canyon/io.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

using Catch::Matchers::ContainsSubstring;
using canyon::read_text_file;
using canyon::write_text_file;

// Covered tests:
// - envfactor: classes, normalization, extrapolation warning, input errors
// - pathloss: row count, missing breakpoint, determinism, convention echo
// - generate: drop count, manifest determinism, seed fallback, generation errors
// - campaign: CDF files, quantiles, worker independence
// - validate: filtering, corrupted tables, full run
// - exit codes for command-line errors

namespace fs = std::filesystem;

struct Run
{
    int code;
    std::string out;
    std::string err;
};

static fs::path scratch()
{
    static const fs::path p = []
    {
        const auto d = fs::temp_directory_path() / "canyon_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return p;
}

static Run run(const std::string &args, const std::string &env = "")
{
    const auto out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
    const std::string cmd = env + " " + CANYON_SIM_EXE + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_text_file(out), read_text_file(err)};
}

static std::string data(const std::string &rel)
{
    return (fs::path(CANYON_DATA_DIR) / rel).string();
}

static std::string file(const std::string &name, const std::string &content)
{
    const auto p = scratch() / name;
    write_text_file(p, content);
    return p.string();
}

static std::string dir(const std::string &name)
{
    return (scratch() / name).string();
}

TEST_CASE("CLI - envfactor")
{
    auto r = run("envfactor " + data("regions/hcl.json") + " --out " + dir("ef1"));
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("class    = HCL"));
    CHECK_THAT(r.out, ContainsSubstring("h_height"));
    const auto doc = nlohmann::json::parse(read_text_file(dir("ef1") + "/envfactor.json"));
    CHECK(doc.at("class") == "HCL");

    r = run("envfactor --s 30 --out " + dir("ef2"));
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("S~       = 0\n"));
    CHECK_THAT(r.out, ContainsSubstring("class    = MCL"));

    r = run("envfactor --s 45 --out " + dir("ef2"));
    CHECK_THAT(r.out, ContainsSubstring("class    = HCL"));

    r = run("envfactor --s 60 --out " + dir("ef3"));
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("out-of-range"));
    CHECK_THAT(r.err, ContainsSubstring("extrapolated"));

    const auto bad = file("bad_region.json", R"({"name": "b", "region_area_m2": 100,
        "buildings": [{"height_m": 10, "footprint_area_m2": -5}]})");
    r = run("envfactor " + bad + " --out " + dir("ef4"));
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("footprint_area_m2"));

    const auto empty = file("empty_region.json", R"({"name": "e", "region_area_m2": 100, "buildings": []})");
    r = run("envfactor " + empty + " --out " + dir("ef4"));
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("no buildings"));

    CHECK(run("envfactor " + dir("missing.json")).code == 2);
}

TEST_CASE("CLI - pathloss")
{
    const auto cfg = file("pl.json", R"({"s": 30, "pathloss": {"breakpoint_distance_m": 50},
                                         "sweep": {"d_min_m": 10, "d_max_m": 1000, "n_points": 3}})");
    auto r = run("pathloss --config " + cfg + " --format csv --out " + dir("pl1"));
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("s_convention = raw"));
    const auto csv = read_text_file(dir("pl1") + "/pathloss_sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.starts_with("d_m,pl_los_db,pl_nlos_db,baseline_los_db,baseline_nlos_db\n"));
    const auto sidecar = nlohmann::json::parse(read_text_file(dir("pl1") + "/pathloss_sweep.config.json"));
    CHECK(sidecar.at("s_convention") == "raw");

    run("pathloss --config " + cfg + " --format csv --out " + dir("pl2"));
    CHECK(read_text_file(dir("pl2") + "/pathloss_sweep.csv") == csv);

    r = run("pathloss --config " + cfg + " --s-convention normalized --out " + dir("pl3"));
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("s_convention = normalized"));
    CHECK(fs::exists(dir("pl3") + "/pathloss_sweep.json"));
    CHECK(read_text_file(dir("pl3") + "/pathloss_sweep.csv") != csv);

    const auto no_d0 = file("pl_nod0.json", R"({"s": 30})");
    r = run("pathloss --config " + no_d0 + " --out " + dir("pl4"));
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("pathloss.breakpoint_distance_m"));

    r = run("pathloss --config " + file("pl_bad.json", R"({"s": 30, "sweep": {"n_points": 1}, "pathloss": {"breakpoint_distance_m": 50}})") +
            " --out " + dir("pl5"));
    CHECK(r.code == 2);
}

TEST_CASE("CLI - generate")
{
    const auto cfg = file("gen.json", R"({"s": 30, "generate": {"state": "LOS", "distance_m": 100}, "n_drops": 5})");
    auto r = run("generate --config " + cfg + " --seed 7 --out " + dir("g1"));
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("mean N_cl"));
    CHECK_THAT(r.out, ContainsSubstring("mean N_MPC"));
    CHECK_THAT(r.out, ContainsSubstring("mean DS"));
    const auto manifest = read_text_file(dir("g1") + "/manifest.json");
    const auto doc = nlohmann::json::parse(manifest);
    std::size_t drops = 0;
    for (const auto &e : doc.at("files"))
        drops += e.at("artifact") == "drop";
    CHECK(drops == 5);
    CHECK(fs::exists(dir("g1") + "/drops/drop_00004.json"));
    CHECK(fs::exists(dir("g1") + "/mpcs.csv"));

    run("generate --config " + cfg + " --seed 7 --out " + dir("g2"));
    CHECK(read_text_file(dir("g2") + "/manifest.json") == manifest);
    run("generate --config " + cfg + " --out " + dir("g3"), "CANYON_SIM_SEED=7");
    CHECK(read_text_file(dir("g3") + "/manifest.json") == manifest);
    run("generate --config " + cfg + " --seed 8 --out " + dir("g4"));
    CHECK(read_text_file(dir("g4") + "/manifest.json") != manifest);

    // default seed is 0
    run("generate --config " + cfg + " --out " + dir("g5"));
    run("generate --config " + cfg + " --seed 0 --out " + dir("g6"));
    CHECK(read_text_file(dir("g5") + "/manifest.json") == read_text_file(dir("g6") + "/manifest.json"));

    const auto broken = file("gen_bad.json", R"({"s": 30, "generate": {"state": "LOS", "distance_m": 100}, "n_drops": 5,
                                               "table_overrides": {"LOS.n_mpc.alpha": -1}})");
    r = run("generate --config " + broken + " --seed 3 --out " + dir("g7"));
    CHECK(r.code == 3);
    CHECK_THAT(r.err, ContainsSubstring("master_seed=3, drop_index=0"));

    r = run("generate --config " + file("gen_nostate.json", R"({"s": 30})") + " --out " + dir("g8"));
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("generate.state"));

    r = run("generate --config " + file("gen_nlos.json", R"({"s": 30, "generate": {"state": "NLOS", "distance_m": 100}})") +
            " --out " + dir("g9"));
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("breakpoint_distance_m"));

    CHECK(run("generate --config " + cfg + " --seed -4 --out " + dir("g10")).code == 2);
    CHECK(run("generate --config " + cfg + " --out " + dir("g10"), "CANYON_SIM_SEED=abc").code == 2);
}

TEST_CASE("CLI - campaign")
{
    auto r = run("campaign --preset MCL -n 100 --seed 1 --out " + dir("c1"));
    CHECK(r.code == 0);
    for (const char *st : {"LOS", "NLOS"})
        for (const char *m : {"ds", "asa", "esa"})
            CHECK(fs::exists(dir("c1") + "/MCL_" + st + "_" + m + "_cdf.csv"));
    CHECK_THAT(r.out, ContainsSubstring("NLOS  ds"));
    CHECK_FALSE(r.out.find(" -") != std::string::npos);

    const auto manifest = read_text_file(dir("c1") + "/manifest.json");
    run("campaign --preset MCL -n 100 --seed 1 --workers 4 --out " + dir("c2"));
    CHECK(read_text_file(dir("c2") + "/manifest.json") == manifest);

    r = run("campaign --config " + data("configs/campaign_hcl.json") + " -n 50 --format json --out " + dir("c3"));
    CHECK(r.code == 0);
    CHECK(fs::exists(dir("c3") + "/records.json"));
    CHECK_FALSE(fs::exists(dir("c3") + "/records.csv"));

    CHECK(run("campaign --out " + dir("c4")).code == 2);
    CHECK(run("campaign --preset XCL --out " + dir("c4")).code == 2);
}

TEST_CASE("CLI - validate")
{
    auto r = run("validate --filter pathloss --out " + dir("v1"));
    CHECK(r.code == 0);
    const auto report = nlohmann::json::parse(read_text_file(dir("v1") + "/validation_report.json"));
    CHECK(report.at("passed") == true);
    for (const auto &p : report.at("results"))
        CHECK(p.at("suite") == "pathloss");
    CHECK(report.at("results").size() == 4);

    const auto corrupt = file("corrupt.json", R"({"table_overrides": {"NLOS.aoa.alpha": -12.39}})");
    r = run("validate --filter smallscale --config " + corrupt + " --out " + dir("v2"));
    CHECK(r.code == 1);
    CHECK_THAT(r.out, ContainsSubstring("FAIL smallscale.table_scales_positive"));
    CHECK_THAT(r.out, ContainsSubstring("NLOS.aoa"));

    CHECK(run("validate --filter nothing --out " + dir("v3")).code == 2);

    r = run("validate --out " + dir("v4"));
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("0 failed"));
}

TEST_CASE("CLI - command-line errors")
{
    CHECK(run("").code == 2);
    CHECK(run("bogus").code == 2);
    CHECK(run("campaign --format xml").code == 2);
    CHECK(run("pathloss --s-convention cubic").code == 2);
    CHECK(run("envfactor --s 30 extra args here").code == 2);
    CHECK(run("--help").code == 0);
}
