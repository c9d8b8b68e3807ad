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

#include "canyon/io.hpp"
#include "canyon/errors.hpp"

#include "json.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace canyon
{
    namespace
    {
        nlohmann::json number_or_null(double v)
        {
            return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
        }
    }

    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        return fmt::format("{}", value);
    }

    std::string sha256_hex(std::string_view content)
    {
        std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int length = 0;
        if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
            EVP_DigestUpdate(ctx.get(), content.data(), content.size()) != 1 ||
            EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
            throw std::runtime_error("SHA-256 digest failed");
        std::string hex;
        for (unsigned int i = 0; i < length; ++i)
            hex += fmt::format("{:02x}", digest[i]);
        return hex;
    }

    void write_text_file(const std::filesystem::path &path, std::string_view content)
    {
        std::error_code ec;
        if (path.has_parent_path())
        {
            std::filesystem::create_directories(path.parent_path(), ec);
            if (ec)
                throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
        }
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write '" + path.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw IoError("write failed for '" + path.string() + "'");
    }

    std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot read '" + path.string() + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    std::string drop_to_json(const ChannelDrop &drop)
    {
        nlohmann::ordered_json doc;
        doc["env"] = {{"h_height_m", number_or_null(drop.env.h_height)},
                      {"h_std_m", number_or_null(drop.env.h_std)},
                      {"rho", number_or_null(drop.env.rho)},
                      {"s", drop.env.s},
                      {"s_norm", drop.env.s_norm}};
        doc["state"] = to_string(drop.state);
        doc["distance_m"] = drop.distance_m;
        doc["pl_db"] = drop.pl_db;
        doc["s_convention"] = to_string(drop.s_convention);
        doc["normalized"] = drop.normalized;
        doc["kappa"] = drop.kappa;
        doc["extrapolated"] = drop.extrapolated;
        doc["seed_record"] = {{"master_seed", drop.seed_record.master_seed},
                              {"drop_index", drop.seed_record.drop_index}};
        auto clusters = nlohmann::ordered_json::array();
        for (const auto &c : drop.clusters)
        {
            nlohmann::ordered_json jc;
            jc["center"] = {{"power_db", c.center.power_db},
                            {"delay_ns", c.center.delay_ns},
                            {"aoa_deg", c.center.aoa_deg},
                            {"eoa_deg", c.center.eoa_deg}};
            nlohmann::ordered_json mpcs = {{"power_db", nlohmann::ordered_json::array()},
                                           {"delay_ns", nlohmann::ordered_json::array()},
                                           {"aoa_deg", nlohmann::ordered_json::array()},
                                           {"eoa_deg", nlohmann::ordered_json::array()},
                                           {"phase_rad", nlohmann::ordered_json::array()}};
            for (const auto &m : c.mpcs)
            {
                mpcs["power_db"].push_back(m.power_db);
                mpcs["delay_ns"].push_back(m.delay_ns);
                mpcs["aoa_deg"].push_back(m.aoa_deg);
                mpcs["eoa_deg"].push_back(m.eoa_deg);
                mpcs["phase_rad"].push_back(m.phase_rad);
            }
            jc["mpcs"] = std::move(mpcs);
            clusters.push_back(std::move(jc));
        }
        doc["clusters"] = std::move(clusters);
        return doc.dump(2) + "\n";
    }

    std::string mpc_csv_header()
    {
        return "drop_index,state,distance_m,pl_db,cluster,mpc,power_db,delay_ns,aoa_deg,eoa_deg,phase_rad\n";
    }

    void append_mpc_rows(std::string &csv, const ChannelDrop &drop)
    {
        for (std::size_t c = 0; c < drop.clusters.size(); ++c)
            for (std::size_t r = 0; r < drop.clusters[c].mpcs.size(); ++r)
            {
                const auto &m = drop.clusters[c].mpcs[r];
                csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", drop.seed_record.drop_index, to_string(drop.state),
                                   format_number(drop.distance_m), format_number(drop.pl_db), c, r,
                                   format_number(m.power_db), format_number(m.delay_ns), format_number(m.aoa_deg),
                                   format_number(m.eoa_deg), format_number(m.phase_rad));
            }
    }

    std::string sweep_csv(const std::vector<SweepRow> &rows)
    {
        std::string csv = "d_m,pl_los_db,pl_nlos_db,baseline_los_db,baseline_nlos_db\n";
        for (const auto &r : rows)
            csv += fmt::format("{},{},{},{},{}\n", format_number(r.distance_m), format_number(r.pl_los_db),
                               format_number(r.pl_nlos_db), format_number(r.baseline_los_db),
                               format_number(r.baseline_nlos_db));
        return csv;
    }

    std::string pathloss_config_json(const PathLossConfig &cfg, const EnvFactor &env)
    {
        nlohmann::ordered_json doc;
        doc["carrier_frequency_ghz"] = cfg.carrier_frequency_ghz;
        doc["rx_antenna_height_m"] = cfg.rx_antenna_height_m;
        doc["breakpoint_distance_m"] = cfg.breakpoint_distance_m ? nlohmann::ordered_json(*cfg.breakpoint_distance_m)
                                                                 : nlohmann::ordered_json(nullptr);
        doc["k_a"] = cfg.k_a;
        doc["k_b"] = cfg.k_b;
        doc["k_c"] = cfg.k_c;
        doc["k_d"] = cfg.k_d;
        doc["s_convention"] = to_string(cfg.s_convention);
        doc["s"] = env.s;
        doc["s_norm"] = env.s_norm;
        doc["s_effective"] = effective_s(env, cfg);
        doc["units"] = {{"distance", "m"}, {"carrier_frequency", "GHz"}, {"path_loss", "dB"}};
        return doc.dump(2) + "\n";
    }

    std::string sweep_json(const std::vector<SweepRow> &rows, const PathLossConfig &cfg, const EnvFactor &env)
    {
        nlohmann::ordered_json doc;
        doc["config"] = nlohmann::ordered_json::parse(pathloss_config_json(cfg, env));
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto &r : rows)
            doc["rows"].push_back({{"d_m", r.distance_m}, {"pl_los_db", r.pl_los_db}, {"pl_nlos_db", r.pl_nlos_db},
                                   {"baseline_los_db", r.baseline_los_db}, {"baseline_nlos_db", r.baseline_nlos_db}});
        return doc.dump(1) + "\n";
    }
}
