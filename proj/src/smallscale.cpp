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

#include "canyon/smallscale.hpp"
#include "canyon/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace canyon
{
    namespace
    {
        ParamFunction constant(double c)
        {
            return {ParamFunction::Form::Constant, c, 0.0, 1.0, "c", ""};
        }

        ParamFunction linear(double slope, double intercept, const char *slope_name = "a1",
                             const char *intercept_name = "a0", double divisor = 1.0)
        {
            return {ParamFunction::Form::Linear, slope, intercept, divisor, slope_name, intercept_name};
        }

        ParamFunction exponential(double alpha, double rate)
        {
            return {ParamFunction::Form::Exponential, alpha, rate, 1.0, "alpha", "beta"};
        }

        std::size_t state_index(LinkState s) { return s == LinkState::LOS ? 0 : 1; }
    }

    std::string to_string(Family f)
    {
        switch (f)
        {
        case Family::Normal:
            return "normal";
        case Family::Lognormal:
            return "lognormal";
        default:
            return "laplace";
        }
    }

    std::string to_string(SmallScaleParam p)
    {
        static const std::array<const char *, 6> names{"power", "delay", "aoa", "eoa", "n_clusters", "n_mpc"};
        return names[static_cast<std::size_t>(p)];
    }

    double ParamFunction::operator()(double s_norm) const
    {
        switch (form)
        {
        case Form::Constant:
            return a;
        case Form::Linear:
            return (a * s_norm + b) / divisor;
        default:
            return a * std::exp(b * s_norm);
        }
    }

    std::string ParamFunction::describe() const
    {
        std::ostringstream os;
        os.precision(17);
        switch (form)
        {
        case Form::Constant:
            os << a;
            break;
        case Form::Linear:
            os << "(" << a << "*S~ + " << b << ")";
            if (divisor != 1.0)
                os << "/" << divisor;
            break;
        default:
            os << a << "*exp(" << b << "*S~)";
        }
        return os.str();
    }

    const SmallScaleTable &SmallScaleTable::defaults()
    {
        static const SmallScaleTable table = make_defaults();
        return table;
    }

    const TableEntry &SmallScaleTable::entry(LinkState state, SmallScaleParam param) const
    {
        return entries_[state_index(state)][static_cast<std::size_t>(param)];
    }

    std::vector<std::string> SmallScaleTable::coefficient_keys() const
    {
        std::vector<std::string> keys;
        for (LinkState state : {LinkState::LOS, LinkState::NLOS})
            for (SmallScaleParam p : all_small_scale_params)
            {
                const auto &e = entry(state, p);
                const std::string prefix = to_string(state) + "." + to_string(p) + ".";
                for (const ParamFunction *fn : {&e.location, &e.scale})
                {
                    keys.push_back(prefix + fn->name_a);
                    if (fn->form != ParamFunction::Form::Constant)
                        keys.push_back(prefix + fn->name_b);
                }
            }
        return keys;
    }

    double &SmallScaleTable::coefficient_ref(const std::string &key)
    {
        const auto first = key.find('.');
        const auto second = key.find('.', first == std::string::npos ? first : first + 1);
        if (first == std::string::npos || second == std::string::npos)
            throw ConfigError("malformed table coefficient key '" + key + "'");
        const std::string state_text = key.substr(0, first);
        const std::string param_text = key.substr(first + 1, second - first - 1);
        const std::string coef = key.substr(second + 1);

        if (state_text != "LOS" && state_text != "NLOS")
            throw ConfigError("unknown link state in table key '" + key + "'");
        const LinkState state = link_state_from_string(state_text);

        for (SmallScaleParam p : all_small_scale_params)
        {
            if (to_string(p) != param_text)
                continue;
            auto &e = entries_[state_index(state)][static_cast<std::size_t>(p)];
            for (ParamFunction *fn : {&e.location, &e.scale})
            {
                if (fn->name_a == coef)
                    return fn->a;
                if (fn->form != ParamFunction::Form::Constant && fn->name_b == coef)
                    return fn->b;
            }
            throw ConfigError("unknown coefficient in table key '" + key + "'");
        }
        throw ConfigError("unknown parameter in table key '" + key + "'");
    }

    double SmallScaleTable::coefficient(const std::string &key) const
    {
        return const_cast<SmallScaleTable *>(this)->coefficient_ref(key);
    }

    void SmallScaleTable::set_coefficient(const std::string &key, double value)
    {
        coefficient_ref(key) = value;
        overrides_.emplace_back(key, value);
    }

    SmallScaleTable apply_table_overrides(const SmallScaleTable &base, const std::string &json_text)
    {
        nlohmann::json doc;
        try
        {
            doc = nlohmann::json::parse(json_text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ConfigError(std::string("malformed table override JSON: ") + e.what());
        }
        if (!doc.is_object())
            throw ConfigError("table overrides must be a JSON object");
        SmallScaleTable table = base;
        for (const auto &[key, value] : doc.items())
        {
            if (!value.is_number())
                throw ConfigError("table override '" + key + "' must be a number");
            table.set_coefficient(key, value.get<double>());
        }
        return table;
    }

    ParamSet param_table(double s_norm, LinkState state, const SmallScaleTable &table)
    {
        ParamSet set;
        set.state = state;
        set.s_norm = s_norm;
        set.extrapolated = is_extrapolated(s_norm);
        for (SmallScaleParam p : all_small_scale_params)
        {
            const auto &e = table.entry(state, p);
            DistributionSpec spec{e.family, e.location(s_norm), e.scale(s_norm)};
            if (!(spec.scale > 0.0) || !std::isfinite(spec.scale) || !std::isfinite(spec.location))
            {
                std::ostringstream os;
                os << "table evaluation: " << to_string(state) << "." << to_string(p)
                   << " scale = " << spec.scale << " is not positive at s_norm = " << s_norm;
                throw TableError(os.str());
            }
            set.specs[static_cast<std::size_t>(p)] = spec;
        }
        return set;
    }

    double sample(const DistributionSpec &spec, RandomStream &rng)
    {
        switch (spec.family)
        {
        case Family::Normal:
            return spec.location + spec.scale * rng.gaussian();
        case Family::Lognormal:
            return std::exp(spec.location + spec.scale * rng.gaussian());
        default:
        {
            // Inverse CDF with u on (-1/2, 1/2).
            const double u = rng.uniform_open() - 0.5;
            const double sgn = (u > 0.0) - (u < 0.0);
            return spec.location - spec.scale * sgn * std::log(1.0 - 2.0 * std::abs(u));
        }
        }
    }

    int integerize_count(double draw)
    {
        const double rounded = std::floor(draw + 0.5);
        if (!(rounded >= 1.0))
            return 1;
        if (rounded > 1.0e6)
            return 1000000;
        return static_cast<int>(rounded);
    }

    int sample_count(const DistributionSpec &spec, RandomStream &rng)
    {
        return integerize_count(sample(spec, rng));
    }

    double pdf(const DistributionSpec &spec, double x)
    {
        constexpr double sqrt_2pi = 2.5066282746310002;
        const double mu = spec.location, s = spec.scale;
        switch (spec.family)
        {
        case Family::Normal:
            return std::exp(-(x - mu) * (x - mu) / (2.0 * s * s)) / (s * sqrt_2pi);
        case Family::Lognormal:
        {
            if (!(x > 0.0))
                throw std::domain_error("lognormal density is defined for x > 0 only");
            const double l = std::log(x) - mu;
            return std::exp(-l * l / (2.0 * s * s)) / (x * s * sqrt_2pi);
        }
        default:
            return std::exp(-std::abs(x - mu) / s) / (2.0 * s);
        }
    }

    double cdf(const DistributionSpec &spec, double x)
    {
        const double mu = spec.location, s = spec.scale;
        switch (spec.family)
        {
        case Family::Normal:
            return 0.5 * std::erfc(-(x - mu) / (s * std::numbers::sqrt2));
        case Family::Lognormal:
            return x > 0.0 ? 0.5 * std::erfc(-(std::log(x) - mu) / (s * std::numbers::sqrt2)) : 0.0;
        default:
            return x < mu ? 0.5 * std::exp((x - mu) / s) : 1.0 - 0.5 * std::exp(-(x - mu) / s);
        }
    }

    double mean(const DistributionSpec &spec)
    {
        if (spec.family == Family::Lognormal)
            return std::exp(spec.location + 0.5 * spec.scale * spec.scale);
        return spec.location;
    }

    double stddev(const DistributionSpec &spec)
    {
        switch (spec.family)
        {
        case Family::Normal:
            return spec.scale;
        case Family::Lognormal:
        {
            const double s2 = spec.scale * spec.scale;
            return std::sqrt(std::expm1(s2)) * std::exp(spec.location + 0.5 * s2);
        }
        default:
            return std::numbers::sqrt2 * spec.scale;
        }
    }

    TruncatedDraw truncate_nonnegative(const DistributionSpec &spec, RandomStream &rng)
    {
        constexpr std::size_t max_attempts = 10000;
        if (cdf(spec, 0.0) > 0.99)
            throw std::domain_error("distribution mass almost entirely negative");
        TruncatedDraw draw;
        for (std::size_t attempt = 0; attempt < max_attempts; ++attempt)
        {
            const double x = sample(spec, rng);
            if (x >= 0.0)
            {
                draw.value = x;
                return draw;
            }
            ++draw.rejected;
        }
        throw std::domain_error("distribution mass almost entirely negative");
    }

    SmallScaleTable SmallScaleTable::make_defaults()
    {
        SmallScaleTable t;
        auto set = [&](LinkState s, SmallScaleParam p, Family f, ParamFunction loc, ParamFunction scale)
        {
            t.entries_[state_index(s)][static_cast<std::size_t>(p)] = TableEntry{f, std::move(loc), std::move(scale)};
        };
        using enum SmallScaleParam;
        constexpr auto LOS = LinkState::LOS;
        constexpr auto NLOS = LinkState::NLOS;

        set(LOS, Power, Family::Normal, linear(0.74, -6.93), exponential(3.76, -0.03));
        set(LOS, Delay, Family::Lognormal, linear(-0.03, 9.49), linear(-0.0015, 0.0195, "c1", "c0"));
        set(LOS, Aoa, Family::Laplace, constant(91.0), linear(7.21, 22.62, "a1", "a0", std::numbers::sqrt2));
        set(LOS, Eoa, Family::Laplace, constant(88.0), linear(1.21, 7.31));
        set(LOS, NClusters, Family::Normal, linear(0.13, 1.69), exponential(0.80, 0.12));
        set(LOS, NMpc, Family::Normal, linear(-0.03, 14.62), exponential(0.63, 0.15));

        set(NLOS, Power, Family::Normal, linear(2.83, -5.54), exponential(2.70, -0.45));
        set(NLOS, Delay, Family::Laplace, linear(-1100.0, 12855.5), exponential(233.80, 1.26));
        set(NLOS, Aoa, Family::Laplace, constant(92.0), exponential(12.39, 0.06));
        set(NLOS, Eoa, Family::Laplace, constant(88.0), linear(2.45, 10.55));
        set(NLOS, NClusters, Family::Normal, linear(0.50, 2.70), exponential(1.03, 0.44));
        set(NLOS, NMpc, Family::Normal, linear(0.06, 14.66), exponential(0.61, 0.01));
        return t;
    }
}
