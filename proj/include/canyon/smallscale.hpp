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

#ifndef canyon_smallscale_H
#define canyon_smallscale_H

#include "canyon/pathloss.hpp"
#include "canyon/random.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace canyon
{
    enum class Family
    {
        Normal,
        Lognormal, // location/scale refer to ln(x)
        Laplace
    };

    std::string to_string(Family f);

    // (family, location, scale): normal (mu, sigma), lognormal (mu_log, sigma_log), laplace (mu, b).
    struct DistributionSpec
    {
        Family family = Family::Normal;
        double location = 0.0;
        double scale = 1.0;

        bool operator==(const DistributionSpec &) const = default;
    };

    // The six small-scale parameters: power [dB], delay [ns], AoA [deg], EoA [deg],
    // number of clusters, number of MPCs per cluster.
    enum class SmallScaleParam : std::size_t
    {
        Power = 0,
        Delay,
        Aoa,
        Eoa,
        NClusters,
        NMpc
    };

    inline constexpr std::array<SmallScaleParam, 6> all_small_scale_params{
        SmallScaleParam::Power, SmallScaleParam::Delay, SmallScaleParam::Aoa,
        SmallScaleParam::Eoa, SmallScaleParam::NClusters, SmallScaleParam::NMpc};

    std::string to_string(SmallScaleParam p); // power, delay, aoa, eoa, n_clusters, n_mpc

    // A distribution parameter as a function of S~.
    //   Constant:    a
    //   Linear:      (a * S~ + b) / divisor
    //   Exponential: a * exp(b * S~)
    struct ParamFunction
    {
        enum class Form
        {
            Constant,
            Linear,
            Exponential
        };

        Form form = Form::Constant;
        double a = 0.0;
        double b = 0.0;
        double divisor = 1.0;
        std::string name_a; // coefficient names used by override files
        std::string name_b;

        double operator()(double s_norm) const;
        std::string describe() const;
    };

    struct TableEntry
    {
        Family family = Family::Normal;
        ParamFunction location;
        ParamFunction scale;
    };

    // Environment-conditioned distributions for both link states.
    class SmallScaleTable
    {
    public:
        // Fitted LOS / NLOS constants.
        static const SmallScaleTable &defaults();

        const TableEntry &entry(LinkState state, SmallScaleParam param) const;

        // Keys have the form "{LOS|NLOS}.{parameter}.{coefficient}", e.g. "NLOS.aoa.alpha".
        std::vector<std::string> coefficient_keys() const;
        double coefficient(const std::string &key) const;
        // Throws ConfigError for unknown keys. Every override is recorded in overrides().
        void set_coefficient(const std::string &key, double value);

        const std::vector<std::pair<std::string, double>> &overrides() const { return overrides_; }

    private:
        static SmallScaleTable make_defaults();
        double &coefficient_ref(const std::string &key);

        std::array<std::array<TableEntry, 6>, 2> entries_{};
        std::vector<std::pair<std::string, double>> overrides_;
    };

    // Applies a JSON object of {"LOS.power.a0": -7.0, ...} overrides to a copy of `base`.
    SmallScaleTable apply_table_overrides(const SmallScaleTable &base, const std::string &json_text);

    struct ParamSet
    {
        LinkState state = LinkState::LOS;
        double s_norm = 0.0;
        bool extrapolated = false; // S~ outside the measured range
        std::array<DistributionSpec, 6> specs{};

        const DistributionSpec &operator[](SmallScaleParam p) const { return specs[static_cast<std::size_t>(p)]; }
    };

    // Evaluates all six distributions at S~. Throws TableError if any scale is not positive.
    ParamSet param_table(double s_norm, LinkState state, const SmallScaleTable &table = SmallScaleTable::defaults());

    double sample(const DistributionSpec &spec, RandomStream &rng);

    // Round half up, then clamp to >= 1.
    int integerize_count(double draw);
    int sample_count(const DistributionSpec &spec, RandomStream &rng);

    // Densities exactly as printed; lognormal requires x > 0 (std::domain_error otherwise).
    double pdf(const DistributionSpec &spec, double x);
    double cdf(const DistributionSpec &spec, double x);

    // Analytic moments of the distribution.
    double mean(const DistributionSpec &spec);
    double stddev(const DistributionSpec &spec);

    struct TruncatedDraw
    {
        double value = 0.0;
        std::size_t rejected = 0;
    };

    // Rejection sampling onto x >= 0. Throws std::domain_error if more than 99 % of the mass is negative.
    TruncatedDraw truncate_nonnegative(const DistributionSpec &spec, RandomStream &rng);
}

#endif
