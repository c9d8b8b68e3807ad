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

#include "canyon/synthesis.hpp"

#include <algorithm>
#include <stdexcept>

namespace canyon
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;

        double uniform_phase(RandomStream &rng)
        {
            const double psi = two_pi * rng.uniform();
            return psi < two_pi ? psi : 0.0;
        }

        // Intra-cluster draw around `center` using the table family with a shrunken scale.
        double offset_draw(const DistributionSpec &table_spec, double center, double kappa, RandomStream &rng)
        {
            if (kappa == 0.0)
                return center;
            if (table_spec.family == Family::Lognormal)
                return center * std::exp(kappa * table_spec.scale * rng.gaussian());
            return sample(DistributionSpec{table_spec.family, center, kappa * table_spec.scale}, rng);
        }

        // Accumulates a exp(-j 2 pi f tau) over a uniform grid by phasor rotation,
        // re-anchored periodically with an exact evaluation.
        template <typename Column>
        void accumulate_tap(Column &&h, std::complex<double> amplitude, double delay_ns, const FrequencyGrid &grid)
        {
            constexpr Eigen::Index anchor_every = 64;
            const double tau = delay_ns * 1.0e-9;
            const std::complex<double> step = std::polar(1.0, -two_pi * grid.spacing_hz * tau);
            std::complex<double> z;
            for (Eigen::Index l = 0; l < grid.count; ++l)
            {
                if (l % anchor_every == 0)
                    z = amplitude * std::polar(1.0, -two_pi * (grid.start_hz + static_cast<double>(l) * grid.spacing_hz) * tau);
                h(l) += z;
                z *= step;
            }
        }
    }

    std::size_t ChannelDrop::mpc_count() const
    {
        std::size_t n = 0;
        for (const auto &c : clusters)
            n += c.mpcs.size();
        return n;
    }

    Eigen::VectorXd ChannelDrop::linear_powers() const
    {
        Eigen::VectorXd p(static_cast<Eigen::Index>(mpc_count()));
        Eigen::Index i = 0;
        for (const auto &c : clusters)
            for (const auto &m : c.mpcs)
                p(i++) = std::pow(10.0, m.power_db / 10.0);
        return p;
    }

    double wrap_azimuth_deg(double deg)
    {
        double a = std::fmod(deg, 360.0);
        if (a < 0.0)
            a += 360.0;
        return a < 360.0 ? a : 0.0;
    }

    double fold_elevation_deg(double deg)
    {
        double e = std::fmod(deg, 360.0);
        if (e < 0.0)
            e += 360.0;
        return e > 180.0 ? 360.0 - e : e;
    }

    ChannelDrop generate_drop(const EnvFactor &env, LinkState state, double distance_m, const PathLossConfig &plcfg,
                              SeedRecord seed, const SynthesisOptions &options, const SmallScaleTable &table)
    {
        if (!(distance_m > 0.0))
            throw std::domain_error("distance must be > 0");
        if (!(options.kappa >= 0.0))
            throw std::invalid_argument("kappa must be >= 0");

        ChannelDrop drop;
        drop.env = env;
        drop.state = state;
        drop.distance_m = distance_m;
        drop.seed_record = seed;
        drop.s_convention = plcfg.s_convention;
        drop.kappa = options.kappa;
        drop.pl_db = pl(distance_m, env, state, plcfg);

        const ParamSet params = param_table(env.s_norm, state, table);
        drop.extrapolated = params.extrapolated;
        const auto &power = params[SmallScaleParam::Power];
        const auto &delay = params[SmallScaleParam::Delay];
        const auto &aoa = params[SmallScaleParam::Aoa];
        const auto &eoa = params[SmallScaleParam::Eoa];

        RandomStream rng(seed);
        const int n_clusters = sample_count(params[SmallScaleParam::NClusters], rng);
        drop.clusters.reserve(static_cast<std::size_t>(n_clusters));

        for (int c = 0; c < n_clusters; ++c)
        {
            Cluster cluster;
            cluster.center.power_db = sample(power, rng);
            const auto center_delay = truncate_nonnegative(delay, rng);
            cluster.center.delay_ns = center_delay.value;
            drop.rejected_delay_draws += center_delay.rejected;
            cluster.center.aoa_deg = wrap_azimuth_deg(sample(aoa, rng));
            cluster.center.eoa_deg = fold_elevation_deg(sample(eoa, rng));

            const int n_mpc = sample_count(params[SmallScaleParam::NMpc], rng);
            cluster.mpcs.reserve(static_cast<std::size_t>(n_mpc));
            for (int r = 0; r < n_mpc; ++r)
            {
                Mpc m;
                m.power_db = offset_draw(power, cluster.center.power_db, options.kappa, rng);

                if (delay.family == Family::Lognormal || options.kappa == 0.0)
                    m.delay_ns = offset_draw(delay, cluster.center.delay_ns, options.kappa, rng);
                else
                {
                    const auto d = truncate_nonnegative(
                        DistributionSpec{delay.family, cluster.center.delay_ns, options.kappa * delay.scale}, rng);
                    m.delay_ns = d.value;
                    drop.rejected_delay_draws += d.rejected;
                }

                m.aoa_deg = wrap_azimuth_deg(offset_draw(aoa, cluster.center.aoa_deg, options.kappa, rng));
                m.eoa_deg = fold_elevation_deg(offset_draw(eoa, cluster.center.eoa_deg, options.kappa, rng));
                m.phase_rad = uniform_phase(rng);
                cluster.mpcs.push_back(m);
            }
            drop.clusters.push_back(std::move(cluster));
        }

        return options.normalize ? normalize_powers(std::move(drop)) : drop;
    }

    ChannelDrop normalize_powers(ChannelDrop drop)
    {
        double total = 0.0;
        for (const auto &c : drop.clusters)
            for (const auto &m : c.mpcs)
                total += std::pow(10.0, m.power_db / 10.0);
        if (!(total > 0.0))
            throw std::domain_error("cannot normalize a drop without MPCs");
        const double shift = -10.0 * std::log10(total);
        for (auto &c : drop.clusters)
            for (auto &m : c.mpcs)
                m.power_db += shift;
        drop.normalized = true;
        return drop;
    }

    ChannelDrop redraw_phases(ChannelDrop drop, RandomStream &rng)
    {
        for (auto &c : drop.clusters)
            for (auto &m : c.mpcs)
                m.phase_rad = uniform_phase(rng);
        return drop;
    }

    void ArrayGeometry::validate() const
    {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("array rows and cols must be >= 1");
        if (!(spacing_wavelengths >= 0.0))
            throw std::invalid_argument("array element spacing must be >= 0");
    }

    std::vector<Tap> cir(const ChannelDrop &drop)
    {
        const double pl_linear = std::pow(10.0, -drop.pl_db / 10.0);
        std::vector<Tap> taps;
        taps.reserve(drop.mpc_count());
        for (const auto &c : drop.clusters)
            for (const auto &m : c.mpcs)
                taps.push_back({m.delay_ns, std::polar(std::sqrt(std::pow(10.0, m.power_db / 10.0) * pl_linear), m.phase_rad)});
        std::stable_sort(taps.begin(), taps.end(), [](const Tap &a, const Tap &b)
                         { return a.delay_ns < b.delay_ns; });
        return taps;
    }

    ArrayCir cir(const ChannelDrop &drop, const ArrayGeometry &geom)
    {
        geom.validate();
        struct Entry
        {
            Tap tap;
            double aoa_deg;
            double eoa_deg;
        };
        const double pl_linear = std::pow(10.0, -drop.pl_db / 10.0);
        std::vector<Entry> entries;
        for (const auto &c : drop.clusters)
            for (const auto &m : c.mpcs)
                entries.push_back({{m.delay_ns, std::polar(std::sqrt(std::pow(10.0, m.power_db / 10.0) * pl_linear), m.phase_rad)},
                                   m.aoa_deg,
                                   m.eoa_deg});
        std::stable_sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b)
                         { return a.tap.delay_ns < b.tap.delay_ns; });

        ArrayCir out;
        const auto n_taps = static_cast<Eigen::Index>(entries.size());
        out.delays_ns.resize(n_taps);
        out.amplitudes.resize(geom.size(), n_taps);
        for (Eigen::Index t = 0; t < n_taps; ++t)
        {
            const auto &e = entries[static_cast<std::size_t>(t)];
            out.delays_ns(t) = e.tap.delay_ns;
            out.amplitudes.col(t) = e.tap.amplitude * steering_vector(geom, e.aoa_deg, e.eoa_deg);
        }
        return out;
    }

    Eigen::VectorXd FrequencyGrid::offsets_hz() const
    {
        Eigen::VectorXd f(count);
        for (Eigen::Index l = 0; l < count; ++l)
            f(l) = start_hz + static_cast<double>(l) * spacing_hz;
        return f;
    }

    Eigen::VectorXcd transfer_function(std::span<const Tap> taps, const FrequencyGrid &grid)
    {
        if (grid.count < 1)
            throw std::invalid_argument("frequency grid must be non-empty");
        Eigen::VectorXcd h = Eigen::VectorXcd::Zero(grid.count);
        for (const auto &tap : taps)
            accumulate_tap(h, tap.amplitude, tap.delay_ns, grid);
        return h;
    }

    Eigen::VectorXcd transfer_function(std::span<const Tap> taps, const Eigen::VectorXd &f_hz)
    {
        if (f_hz.size() < 1)
            throw std::invalid_argument("frequency grid must be non-empty");
        Eigen::VectorXcd h = Eigen::VectorXcd::Zero(f_hz.size());
        for (const auto &tap : taps)
        {
            const double tau = tap.delay_ns * 1.0e-9;
            for (Eigen::Index l = 0; l < f_hz.size(); ++l)
                h(l) += tap.amplitude * std::polar(1.0, -two_pi * f_hz(l) * tau);
        }
        return h;
    }

    Eigen::MatrixXcd transfer_function(const ArrayCir &response, const FrequencyGrid &grid)
    {
        if (grid.count < 1)
            throw std::invalid_argument("frequency grid must be non-empty");
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(response.amplitudes.rows(), grid.count);
        for (Eigen::Index t = 0; t < response.delays_ns.size(); ++t)
            for (Eigen::Index e = 0; e < response.amplitudes.rows(); ++e)
                accumulate_tap(h.row(e), response.amplitudes(e, t), response.delays_ns(t), grid);
        return h;
    }

    Eigen::VectorXcd transfer_function(const ChannelDrop &drop, const FrequencyGrid &grid)
    {
        const auto taps = cir(drop);
        return transfer_function(std::span<const Tap>(taps), grid);
    }
}
