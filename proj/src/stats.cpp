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

#include "canyon/stats.hpp"

#include <algorithm>
#include <map>

namespace canyon
{
    Pdp pdp(std::span<const Tap> taps, std::optional<double> bin_width_ns)
    {
        if (taps.empty())
            throw std::domain_error("PDP needs at least one tap");
        if (bin_width_ns && !(*bin_width_ns > 0.0))
            throw std::invalid_argument("bin width must be positive");

        std::vector<std::pair<double, double>> entries;
        if (bin_width_ns)
        {
            std::map<long long, double> bins;
            for (const auto &t : taps)
                bins[static_cast<long long>(std::floor(t.delay_ns / *bin_width_ns))] += std::norm(t.amplitude);
            for (const auto &[k, p] : bins)
                entries.emplace_back(static_cast<double>(k) * *bin_width_ns, p);
        }
        else
        {
            for (const auto &t : taps)
                entries.emplace_back(t.delay_ns, std::norm(t.amplitude));
            std::stable_sort(entries.begin(), entries.end(), [](const auto &a, const auto &b)
                             { return a.first < b.first; });
        }

        Pdp out;
        out.bin_width_ns = bin_width_ns;
        out.delays_ns.resize(static_cast<Eigen::Index>(entries.size()));
        out.powers.resize(static_cast<Eigen::Index>(entries.size()));
        for (std::size_t i = 0; i < entries.size(); ++i)
        {
            out.delays_ns(static_cast<Eigen::Index>(i)) = entries[i].first;
            out.powers(static_cast<Eigen::Index>(i)) = entries[i].second;
        }
        return out;
    }

    std::vector<CdfPoint> empirical_cdf(std::span<const double> samples)
    {
        if (samples.empty())
            throw std::domain_error("empirical CDF needs at least one sample");
        std::vector<double> sorted(samples.begin(), samples.end());
        std::stable_sort(sorted.begin(), sorted.end());
        const double n = static_cast<double>(sorted.size());
        std::vector<CdfPoint> cdf;
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (i + 1 == sorted.size() || sorted[i + 1] != sorted[i])
                cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
        return cdf;
    }

    double ks_distance(std::span<const double> a, std::span<const double> b)
    {
        if (a.empty() || b.empty())
            throw std::domain_error("KS distance needs non-empty samples");
        std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
        std::size_t i = 0, j = 0;
        double d = 0.0;
        while (i < x.size() && j < y.size())
        {
            const double v = std::min(x[i], y[j]);
            while (i < x.size() && x[i] == v)
                ++i;
            while (j < y.size() && y[j] == v)
                ++j;
            d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
        }
        return d;
    }

    double quantile(std::span<const double> samples, double q)
    {
        if (samples.empty())
            throw std::domain_error("quantile of an empty sample");
        if (!(q >= 0.0 && q <= 1.0))
            throw std::invalid_argument("quantile level must be in [0, 1]");
        std::vector<double> s(samples.begin(), samples.end());
        std::sort(s.begin(), s.end());
        const double pos = q * static_cast<double>(s.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, s.size() - 1);
        return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
    }
}
