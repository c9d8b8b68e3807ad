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

#include "canyon/validation.hpp"
#include "canyon/errors.hpp"
#include "canyon/harness.hpp"
#include "canyon/io.hpp"
#include "canyon/morphology.hpp"
#include "canyon/pathloss.hpp"
#include "canyon/stats.hpp"
#include "canyon/synthesis.hpp"

#include "json.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>
#include <unistd.h>

namespace canyon
{
    namespace
    {
        struct Outcome
        {
            bool passed;
            std::string detail;
        };

        bool rel_close(double a, double b, double tol)
        {
            return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
        }

        ObservationRegion random_region(RandomStream &rng)
        {
            ObservationRegion r;
            const int n = 1 + static_cast<int>(rng.uniform() * 12.0);
            double total = 0.0;
            for (int i = 0; i < n; ++i)
            {
                Building b{3.0 + 77.0 * rng.uniform(), 20.0 + 1980.0 * rng.uniform()};
                total += b.footprint_area_m2;
                r.buildings.push_back(b);
            }
            r.region_area_m2 = total * (1.0 + 3.0 * rng.uniform());
            return r;
        }

        // ---- morphology ----------------------------------------------------------------------

        Outcome morphology_scale()
        {
            RandomStream rng(101);
            for (int t = 0; t < 200; ++t)
            {
                const auto r = random_region(rng);
                auto scaled = r;
                const double c = std::pow(10.0, -2.0 + 4.0 * rng.uniform());
                for (auto &b : scaled.buildings)
                    b.footprint_area_m2 *= c;
                scaled.region_area_m2 *= c;
                const auto f = composite_factor(r), g = composite_factor(scaled);
                if (!rel_close(f.h_height, g.h_height, 1e-9) || !rel_close(f.h_std, g.h_std, 1e-9) ||
                    !rel_close(f.rho, g.rho, 1e-9) || !rel_close(f.s, g.s, 1e-9))
                    return {false, fmt::format("trial {} with scale {} changed the factor", t, c)};
            }
            return {true, "200 regions, areas scaled by 1e-2..1e2"};
        }

        Outcome morphology_permutation()
        {
            RandomStream rng(102);
            for (int t = 0; t < 200; ++t)
            {
                const auto r = random_region(rng);
                auto shuffled = r;
                for (std::size_t i = shuffled.buildings.size(); i > 1; --i)
                    std::swap(shuffled.buildings[i - 1], shuffled.buildings[rng.next_u64() % i]);
                const auto f = composite_factor(r), g = composite_factor(shuffled);
                if (f.h_height != g.h_height || f.h_std != g.h_std || f.rho != g.rho || f.s != g.s)
                    return {false, fmt::format("trial {}: reordering changed the result", t)};
            }
            return {true, "200 shuffled regions, bit-identical"};
        }

        Outcome morphology_weighted_sum()
        {
            RandomStream rng(103);
            for (int t = 0; t < 200; ++t)
            {
                const auto r = random_region(rng);
                const auto f = composite_factor(r);
                const double expect = 0.5 * weighted_mean_height(r) + 0.2 * height_dispersion(r) + 0.8 * building_density(r);
                if (!rel_close(f.s, expect, 1e-12))
                    return {false, fmt::format("trial {}: S={} but weighted sum={}", t, f.s, expect)};
            }
            return {true, "200 regions, S equals the weighted sum to 1e-12"};
        }

        Outcome morphology_norm_inverse()
        {
            RandomStream rng(104);
            for (int t = 0; t < 200; ++t)
            {
                const auto f = composite_factor(random_region(rng));
                if (!rel_close(15.0 * f.s_norm + 30.0, f.s, 1e-12))
                    return {false, fmt::format("trial {}: 15*s_norm+30 != s", t)};
            }
            return {true, "200 regions"};
        }

        // ---- pathloss ------------------------------------------------------------------------

        Outcome pathloss_monotonic()
        {
            PathLossConfig cfg;
            cfg.breakpoint_distance_m = 50.0;
            for (double s = 0.0; s <= 60.0; s += 2.5)
            {
                double prev_los = -1e300, prev_nlos = -1e300;
                for (double d : log_grid(1.0, 2000.0, 200))
                {
                    const double a = pl_los(d, s, cfg), b = pl_nlos(d, s, cfg);
                    if (!(a > prev_los) || !(b > prev_nlos))
                        return {false, fmt::format("not increasing at s_eff={} d={}", s, d)};
                    prev_los = a;
                    prev_nlos = b;
                }
            }
            return {true, "s_eff 0..60, d 1..2000 m"};
        }

        Outcome pathloss_log_linear()
        {
            PathLossConfig cfg;
            cfg.breakpoint_distance_m = 50.0;
            RandomStream rng(201);
            for (int t = 0; t < 500; ++t)
            {
                const double s = -5.0 + 60.0 * rng.uniform();
                const double d = std::pow(10.0, 3.0 * rng.uniform());
                const double dl = pl_los(10.0 * d, s, cfg) - pl_los(d, s, cfg);
                const double dn = pl_nlos(10.0 * d, s, cfg) - pl_nlos(d, s, cfg);
                if (std::abs(dl - (20.0 + cfg.k_a * s)) > 1e-9 || std::abs(dn - (35.3 + cfg.k_c * s)) > 1e-9)
                    return {false, fmt::format("decade step differs from slope at s={} d={}", s, d)};
            }
            return {true, "500 random (s, d)"};
        }

        Outcome pathloss_baseline_identity()
        {
            PathLossConfig raw, norm;
            raw.breakpoint_distance_m = norm.breakpoint_distance_m = 50.0;
            norm.s_convention = SConvention::NormalizedS;
            const EnvFactor zero_raw = env_from_composite(0.0), zero_norm = env_from_composite(30.0);
            for (double d : log_grid(1.0, 1000.0, 100))
                for (LinkState st : {LinkState::LOS, LinkState::NLOS})
                {
                    if (pl_baseline(d, st, raw) != pl(d, zero_raw, st, raw) ||
                        pl_baseline(d, st, norm) != pl(d, zero_norm, st, norm))
                        return {false, fmt::format("baseline differs at d={}", d)};
                }
            return {true, "bit-identical for S=0 (raw) and S=30 (normalized)"};
        }

        Outcome pathloss_frequency_shift()
        {
            RandomStream rng(202);
            for (int t = 0; t < 500; ++t)
            {
                PathLossConfig a, b;
                a.carrier_frequency_ghz = 0.5 + 10.0 * rng.uniform();
                b.carrier_frequency_ghz = 10.0 * a.carrier_frequency_ghz;
                a.breakpoint_distance_m = b.breakpoint_distance_m = 10.0 + 100.0 * rng.uniform();
                const double s = 50.0 * rng.uniform(), d = 1.0 + 999.0 * rng.uniform();
                if (std::abs(pl_los(d, s, b) - pl_los(d, s, a) - 21.0) > 1e-9 ||
                    std::abs(pl_nlos(d, s, b) - pl_nlos(d, s, a) - 21.3) > 1e-9)
                    return {false, fmt::format("frequency decade shift wrong at f={}", a.carrier_frequency_ghz)};
            }
            return {true, "21 dB (LOS) / 21.3 dB (NLOS) per decade of f_c"};
        }

        // ---- smallscale ----------------------------------------------------------------------

        Outcome table_scales_positive(const SmallScaleTable &table)
        {
            for (double s : {-1.0, 0.0, 1.0})
                for (LinkState st : {LinkState::LOS, LinkState::NLOS})
                    param_table(s, st, table); // throws TableError naming the entry
            return {true, "all 24 scales positive at S~ in {-1, 0, 1}"};
        }

        Outcome moment_recovery(const SmallScaleTable &table)
        {
            constexpr std::size_t n = 100000;
            std::uint64_t stream = 0;
            for (double s : {-1.0, 0.0, 1.0})
                for (LinkState st : {LinkState::LOS, LinkState::NLOS})
                {
                    const auto set = param_table(s, st, table);
                    for (SmallScaleParam p : all_small_scale_params)
                    {
                        const auto &spec = set[p];
                        RandomStream rng(301, stream++);
                        double acc = 0.0;
                        for (std::size_t i = 0; i < n; ++i)
                            acc += sample(spec, rng);
                        const double m = acc / static_cast<double>(n);
                        const double se = stddev(spec) / std::sqrt(static_cast<double>(n));
                        if (std::abs(m - mean(spec)) > 4.0 * se)
                            return {false, fmt::format("{}.{} at S~={}: mean {} vs {} (> 4 SE = {})", to_string(st),
                                                       to_string(p), s, m, mean(spec), 4.0 * se)};
                    }
                }
            return {true, "36 distributions, 1e5 draws each, within 4 SE"};
        }

        Outcome ks_agreement(const SmallScaleTable &table)
        {
            constexpr std::size_t n = 10000;
            int worst = 100;
            std::string worst_name;
            for (double s : {-1.0, 0.0, 1.0})
                for (LinkState st : {LinkState::LOS, LinkState::NLOS})
                {
                    const auto set = param_table(s, st, table);
                    for (SmallScaleParam p : all_small_scale_params)
                    {
                        int pass = 0;
                        for (std::uint64_t seed = 0; seed < 100; ++seed)
                        {
                            RandomStream rng(302 + seed, static_cast<std::uint64_t>(p));
                            std::vector<double> x(n);
                            for (auto &v : x)
                                v = sample(set[p], rng);
                            if (kolmogorov_pvalue(ks_statistic(std::move(x), set[p]), n) >= 0.01)
                                ++pass;
                        }
                        if (pass < worst)
                        {
                            worst = pass;
                            worst_name = fmt::format("{}.{} at S~={}", to_string(st), to_string(p), s);
                        }
                    }
                }
            return {worst >= 95, fmt::format("worst case {}: {}/100 seeds pass at alpha=0.01", worst_name, worst)};
        }

        Outcome table_monotonicity(const SmallScaleTable &table)
        {
            const auto &aoa = table.entry(LinkState::NLOS, SmallScaleParam::Aoa).scale;
            const auto &pow = table.entry(LinkState::LOS, SmallScaleParam::Power).scale;
            double prev_aoa = -1e300, prev_pow = 1e300;
            for (int i = 0; i < 100; ++i)
            {
                const double s = -4.0 / 3.0 + (8.0 / 3.0) * i / 99.0;
                if (!(aoa(s) > prev_aoa) || !(pow(s) < prev_pow))
                    return {false, fmt::format("monotonicity broken at S~={}", s)};
                prev_aoa = aoa(s);
                prev_pow = pow(s);
            }
            return {true, "NLOS AoA scale increasing, LOS power sigma decreasing on 100 points"};
        }

        Outcome sampling_determinism(const SmallScaleTable &table)
        {
            const auto set = param_table(0.0, LinkState::NLOS, table);
            std::vector<double> sequential(4 * 1000), threaded(4 * 1000);
            auto fill = [&](std::vector<double> &out, std::uint64_t w)
            {
                RandomStream rng(303, w);
                for (std::size_t i = 0; i < 1000; ++i)
                    out[w * 1000 + i] = sample(set[SmallScaleParam::Delay], rng);
            };
            for (std::uint64_t w = 0; w < 4; ++w)
                fill(sequential, w);
            {
                std::vector<std::jthread> pool;
                for (std::uint64_t w = 0; w < 4; ++w)
                    pool.emplace_back([&, w] { fill(threaded, w); });
            }
            return {sequential == threaded, "per-worker substreams identical with 1 and 4 threads"};
        }

        // ---- synthesis -----------------------------------------------------------------------

        Outcome energy_consistency()
        {
            RandomStream pick(401);
            PathLossConfig cfg;
            cfg.breakpoint_distance_m = 50.0;
            double worst = 0.0;
            for (int t = 0; t < 20; ++t)
            {
                const double s = 10.0 + 40.0 * pick.uniform();
                const LinkState st = pick.uniform() < 0.5 ? LinkState::LOS : LinkState::NLOS;
                const double d = 10.0 + 290.0 * pick.uniform();
                const auto drop = generate_drop(env_from_composite(s), st, d, cfg, {401, static_cast<std::uint64_t>(t)});
                RandomStream phases(402, static_cast<std::uint64_t>(t));
                double acc = 0.0;
                for (int k = 0; k < 100; ++k)
                {
                    const Eigen::VectorXcd h = transfer_function(redraw_phases(drop, phases));
                    acc += h.cwiseAbs2().mean();
                }
                const double err = std::abs(-10.0 * std::log10(acc / 100.0) - drop.pl_db);
                worst = std::max(worst, err);
            }
            return {worst < 0.5, fmt::format("20 drops x 100 phase draws, worst deviation {:.3f} dB", worst)};
        }

        Outcome phase_uniformity()
        {
            constexpr int bins = 36;
            constexpr std::size_t target = 100000;
            const double critical = boost::math::quantile(boost::math::chi_squared(bins - 1), 0.99);
            PathLossConfig cfg;
            cfg.breakpoint_distance_m = 50.0;
            int pass = 0;
            for (std::uint64_t seed = 0; seed < 100; ++seed)
            {
                std::array<double, bins> counts{};
                std::size_t total = 0;
                for (std::uint64_t i = 0; total < target; ++i)
                {
                    const auto drop = generate_drop(env_from_composite(30.0), i % 2 ? LinkState::NLOS : LinkState::LOS,
                                                    100.0, cfg, {500 + seed, i});
                    for (const auto &c : drop.clusters)
                        for (const auto &m : c.mpcs)
                        {
                            if (total == target)
                                break;
                            const int b = std::min(bins - 1, static_cast<int>(m.phase_rad / (2.0 * std::numbers::pi) * bins));
                            counts[static_cast<std::size_t>(b)] += 1.0;
                            ++total;
                        }
                }
                const double expected = static_cast<double>(target) / bins;
                double chi2 = 0.0;
                for (double c : counts)
                    chi2 += (c - expected) * (c - expected) / expected;
                if (chi2 <= critical)
                    ++pass;
            }
            return {pass >= 95, fmt::format("{}/100 seeds pass chi-square (36 bins, alpha=0.01)", pass)};
        }

        Outcome drop_determinism()
        {
            PathLossConfig cfg;
            cfg.breakpoint_distance_m = 50.0;
            const EnvFactor env = env_from_composite(42.0);
            constexpr std::uint64_t n = 200;
            std::vector<std::string> forward(n), threaded(n);
            for (std::uint64_t i = 0; i < n; ++i)
                forward[i] = drop_to_json(generate_drop(env, i % 3 ? LinkState::NLOS : LinkState::LOS, 80.0, cfg, {7, i}));
            {
                std::vector<std::jthread> pool;
                for (std::uint64_t w = 0; w < 4; ++w)
                    pool.emplace_back([&, w]
                                      {
                                          // reverse order within each worker
                                          for (std::uint64_t k = n; k-- > 0;)
                                              if (k % 4 == w)
                                                  threaded[k] = drop_to_json(generate_drop(env, k % 3 ? LinkState::NLOS : LinkState::LOS, 80.0, cfg, {7, k})); });
            }
            return {forward == threaded, "200 drops: sequential vs 4 threads in reverse order"};
        }

        Outcome cluster_count_mean()
        {
            PathLossConfig cfg;
            constexpr std::size_t n = 10000;
            double acc = 0.0, acc2 = 0.0;
            for (std::uint64_t i = 0; i < n; ++i)
            {
                const double c = static_cast<double>(generate_drop(env_from_composite(30.0), LinkState::LOS, 100.0, cfg, {600, i}).clusters.size());
                acc += c;
                acc2 += c * c;
            }
            const double m = acc / n;
            const double se = std::sqrt((acc2 / n - m * m) / n);
            const double expect = integerized_count_mean(param_table(0.0, LinkState::LOS)[SmallScaleParam::NClusters]);
            return {std::abs(m - expect) <= 4.0 * se,
                    fmt::format("LOS S~=0: mean clusters {:.4f} vs analytic {:.4f} (4 SE = {:.4f})", m, expect, 4.0 * se)};
        }

        Outcome normalization()
        {
            PathLossConfig cfg;
            cfg.breakpoint_distance_m = 50.0;
            for (std::uint64_t i = 0; i < 500; ++i)
            {
                const auto drop = generate_drop(env_from_composite(15.0 + (i % 30)), i % 2 ? LinkState::NLOS : LinkState::LOS,
                                                30.0 + i, cfg, {700, i});
                if (std::abs(drop.linear_powers().sum() - 1.0) > 1e-9)
                    return {false, fmt::format("drop {} powers sum to {}", i, drop.linear_powers().sum())};
            }
            return {true, "500 drops sum to 1 within 1e-9"};
        }

        // ---- stats ---------------------------------------------------------------------------

        Outcome stats_invariances()
        {
            RandomStream rng(801);
            for (int t = 0; t < 500; ++t)
            {
                const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform() * 40);
                Eigen::VectorXd tau(n), p(n), ang(n);
                for (Eigen::Index i = 0; i < n; ++i)
                {
                    tau(i) = 2000.0 * rng.uniform();
                    p(i) = 1e-3 + rng.uniform();
                    ang(i) = 360.0 * rng.uniform();
                }
                const double shift = 1e4 * rng.uniform(), scale = std::pow(10.0, -6.0 + 12.0 * rng.uniform());
                const double ds = rms_delay_spread(tau, p);
                const double as = angular_spread(ang, p);
                const Eigen::VectorXd shifted = tau.array() + shift;
                const Eigen::VectorXd scaled = p * scale;
                const Eigen::VectorXd rotated = ang.array() + 360.0 * rng.uniform();
                const double tol = 1e-9 * std::max(ds, 1.0);
                if (std::abs(rms_delay_spread(shifted, p) - ds) > tol)
                    return {false, fmt::format("delay shift changed DS in trial {}", t)};
                if (std::abs(rms_delay_spread(tau, scaled) - ds) > tol ||
                    std::abs(angular_spread(ang, scaled) - as) > 1e-9)
                    return {false, fmt::format("power scaling changed a spread in trial {}", t)};
                if (std::abs(angular_spread(rotated, p) - as) > 1e-9)
                    return {false, fmt::format("rotation changed the angular spread in trial {}", t)};
                if (!(as >= 0.0 && as <= 1.0 + 1e-12))
                    return {false, fmt::format("angular spread {} outside [0, 1]", as)};
            }
            return {true, "shift, scale, rotation invariance and [0, 1] bound on 500 random profiles"};
        }

        Outcome single_tap_pathloss()
        {
            RandomStream rng(802);
            for (int t = 0; t < 200; ++t)
            {
                const double a = std::pow(10.0, -8.0 * rng.uniform());
                const std::vector<Tap> taps{{5000.0 * rng.uniform(), std::polar(a, 6.0 * rng.uniform())}};
                const double got = pathloss_from_ctf(transfer_function(std::span<const Tap>(taps)));
                if (std::abs(got + 20.0 * std::log10(a)) > 1e-9)
                    return {false, fmt::format("single tap of amplitude {} gives {} dB", a, got)};
            }
            return {true, "200 single-tap responses return -20 log10(a)"};
        }

        // ---- harness -------------------------------------------------------------------------

        std::vector<std::string> export_digests(const CampaignResult &r, const std::string &tag)
        {
            const auto dir = std::filesystem::temp_directory_path() /
                             fmt::format("canyon_validate_{}_{}", static_cast<long>(::getpid()), tag);
            const auto manifest = export_campaign(r, dir, {ExportFormat::Csv, ExportFormat::Json});
            std::filesystem::remove_all(dir);
            std::vector<std::string> d;
            for (const auto &e : manifest.entries)
                d.push_back(e.path + ":" + e.sha256);
            return d;
        }

        Outcome harness_determinism()
        {
            const auto preset = ScenarioPreset::builtin("MCL");
            const auto a = export_digests(run_campaign(preset, 200, {}, 11), "a");
            const auto b = export_digests(run_campaign(preset, 200, {}, 11), "b");
            return {a == b, fmt::format("{} exported files, identical digests across runs", a.size())};
        }

        Outcome harness_parallel(unsigned workers)
        {
            const auto preset = ScenarioPreset::builtin("HCL");
            CampaignOptions one, many;
            many.workers = std::max(4u, workers);
            const auto a = export_digests(run_campaign(preset, 200, {}, 12, one), "p1");
            const auto b = export_digests(run_campaign(preset, 200, {}, 12, many), "pn");
            return {a == b, fmt::format("1 vs {} workers, identical exports", many.workers)};
        }

        Outcome harness_trend(std::size_t n, unsigned workers)
        {
            const auto &aoa = SmallScaleTable::defaults().entry(LinkState::NLOS, SmallScaleParam::Aoa).scale;
            const double b_hcl = aoa(normalize_s(45.0)), b_lcl = aoa(normalize_s(15.0));
            if (!(b_hcl > b_lcl))
                return {false, "NLOS AoA scale not larger at HCL"};
            CampaignOptions opt;
            opt.workers = workers;
            auto stats = [&](const char *name)
            {
                const auto r = run_campaign(ScenarioPreset::builtin(name).with_state(LinkState::NLOS), n, {}, 13, opt);
                const auto v = r.metric_values(LinkState::NLOS, Metric::Asa);
                double s = 0.0, s2 = 0.0;
                for (double x : v)
                {
                    s += x;
                    s2 += x * x;
                }
                const double m = s / static_cast<double>(v.size());
                return std::pair{m, (s2 / static_cast<double>(v.size()) - m * m) / static_cast<double>(v.size())};
            };
            const auto [m_h, var_h] = stats("HCL");
            const auto [m_l, var_l] = stats("LCL");
            const double se = std::sqrt(var_h + var_l);
            return {m_h - m_l >= 4.0 * se,
                    fmt::format("b_theta {:.3f} > {:.3f}; mean ASA HCL {:.5f} vs LCL {:.5f}, separation {:.1f} SE (n={})",
                                b_hcl, b_lcl, m_h, m_l, (m_h - m_l) / se, n)};
        }
    }

    double kolmogorov_pvalue(double d, std::size_t n)
    {
        const double sn = std::sqrt(static_cast<double>(n));
        const double lambda = (sn + 0.12 + 0.11 / sn) * d;
        if (lambda < 0.2)
            return 1.0;
        double sum = 0.0, sign = 1.0;
        for (int k = 1; k <= 100; ++k)
        {
            const double term = std::exp(-2.0 * k * k * lambda * lambda);
            sum += sign * term;
            if (term < 1e-16)
                break;
            sign = -sign;
        }
        return std::clamp(2.0 * sum, 0.0, 1.0);
    }

    double ks_statistic(std::vector<double> samples, const DistributionSpec &spec)
    {
        std::sort(samples.begin(), samples.end());
        const double n = static_cast<double>(samples.size());
        double d = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const double f = cdf(spec, samples[i]);
            d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
        }
        return d;
    }

    double integerized_count_mean(const DistributionSpec &spec)
    {
        // P(count = 1) = P(X < 1.5); P(count = k) = P(k - 0.5 <= X < k + 0.5) for k >= 2.
        double expectation = cdf(spec, 1.5);
        const int k_max = static_cast<int>(std::ceil(spec.location + 40.0 * spec.scale)) + 2;
        for (int k = 2; k <= k_max; ++k)
            expectation += k * (cdf(spec, k + 0.5) - cdf(spec, k - 0.5));
        return expectation;
    }

    bool ValidationReport::all_passed() const
    {
        return std::all_of(results.begin(), results.end(), [](const PropertyResult &r) { return r.passed; });
    }

    std::string ValidationReport::to_json() const
    {
        nlohmann::ordered_json doc;
        doc["passed"] = all_passed();
        auto arr = nlohmann::ordered_json::array();
        for (const auto &r : results)
            arr.push_back({{"suite", r.suite}, {"property", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        doc["results"] = std::move(arr);
        return doc.dump(2) + "\n";
    }

    std::vector<std::string> validation_suites()
    {
        return {"morphology", "pathloss", "smallscale", "synthesis", "stats", "harness"};
    }

    ValidationReport run_validation(const ValidationOptions &options)
    {
        const auto &table = options.table;
        const std::vector<std::tuple<std::string, std::string, std::function<Outcome()>>> properties{
            {"morphology", "scale_invariance", morphology_scale},
            {"morphology", "permutation_invariance", morphology_permutation},
            {"morphology", "composite_weighted_sum", morphology_weighted_sum},
            {"morphology", "s_norm_inverse", morphology_norm_inverse},
            {"pathloss", "monotonic_in_distance", pathloss_monotonic},
            {"pathloss", "linear_in_log_distance", pathloss_log_linear},
            {"pathloss", "baseline_identity", pathloss_baseline_identity},
            {"pathloss", "frequency_shift", pathloss_frequency_shift},
            {"smallscale", "table_scales_positive", [&] { return table_scales_positive(table); }},
            {"smallscale", "moment_recovery", [&] { return moment_recovery(table); }},
            {"smallscale", "ks_agreement", [&] { return ks_agreement(table); }},
            {"smallscale", "table_monotonicity", [&] { return table_monotonicity(table); }},
            {"smallscale", "sampling_determinism", [&] { return sampling_determinism(table); }},
            {"synthesis", "energy_consistency", energy_consistency},
            {"synthesis", "phase_uniformity", phase_uniformity},
            {"synthesis", "drop_determinism", drop_determinism},
            {"synthesis", "cluster_count_mean", cluster_count_mean},
            {"synthesis", "power_normalization", normalization},
            {"stats", "invariances_and_bounds", stats_invariances},
            {"stats", "single_tap_pathloss", single_tap_pathloss},
            {"harness", "end_to_end_determinism", harness_determinism},
            {"harness", "parallel_equivalence", [&] { return harness_parallel(options.workers); }},
            {"harness", "environment_trend", [&] { return harness_trend(options.trend_drops, options.workers); }},
        };

        ValidationReport report;
        for (const auto &[suite, name, fn] : properties)
        {
            if (!options.filter.empty() && suite.rfind(options.filter, 0) != 0)
                continue;
            PropertyResult r{suite, name, false, "", 0.0};
            const auto start = std::chrono::steady_clock::now();
            try
            {
                const auto outcome = fn();
                r.passed = outcome.passed;
                r.detail = outcome.detail;
            }
            catch (const std::exception &e)
            {
                r.passed = false;
                r.detail = e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            report.results.push_back(std::move(r));
        }
        return report;
    }
}
