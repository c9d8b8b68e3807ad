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

#ifndef canyon_stats_H
#define canyon_stats_H

#include "canyon/synthesis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace canyon
{
    // Delay resolution of a 30 MHz sounder, used as the named binning preset.
    inline constexpr double sounder_bin_width_ns = 1.0e3 / 30.0;

    // Power delay profile, delays ascending, linear powers.
    struct Pdp
    {
        Eigen::VectorXd delays_ns;
        Eigen::VectorXd powers;
        std::optional<double> bin_width_ns;
    };

    // |a|^2 per tap. With a bin width, taps are summed into bins [k w, (k+1) w) reported at k w;
    // empty bins are omitted.
    Pdp pdp(std::span<const Tap> taps, std::optional<double> bin_width_ns = std::nullopt);

    // Square root of the second central moment of the PDP.
    template <typename DerivedD, typename DerivedP>
    typename DerivedD::Scalar rms_delay_spread(const Eigen::MatrixBase<DerivedD> &delays,
                                               const Eigen::MatrixBase<DerivedP> &powers)
    {
        using Scalar = typename DerivedD::Scalar;
        if (delays.size() != powers.size())
            throw std::domain_error("delay and power lists differ in length");
        const Scalar total = powers.sum();
        if (!(total > Scalar(0)))
            throw std::domain_error("total PDP power must be positive");
        const Scalar mean = delays.cwiseProduct(powers).sum() / total;
        const Scalar second = (delays.array() - mean).square().cwiseProduct(powers.array()).sum() / total;
        return std::sqrt(std::max(second, Scalar(0)));
    }

    inline double rms_delay_spread(const Pdp &p)
    {
        return rms_delay_spread(p.delays_ns, p.powers);
    }

    // Power-weighted spread of unit phasors (dimensionless, in [0, 1]):
    //   mu = sum p_l e^{j theta_l},  sqrt(sum p_l |e^{j theta_l} - mu|^2),  p normalized to unit sum.
    template <typename DerivedA, typename DerivedP>
    typename DerivedA::Scalar angular_spread(const Eigen::MatrixBase<DerivedA> &angles_deg,
                                             const Eigen::MatrixBase<DerivedP> &powers)
    {
        using Scalar = typename DerivedA::Scalar;
        using Complex = std::complex<Scalar>;
        if (angles_deg.size() != powers.size())
            throw std::domain_error("angle and power lists differ in length");
        if (angles_deg.size() == 0)
            throw std::domain_error("angular spread needs at least one path");
        const Scalar total = powers.sum();
        if (!(total > Scalar(0)))
            throw std::domain_error("total power must be positive");

        constexpr Scalar deg = std::numbers::pi_v<Scalar> / Scalar(180);
        Complex mu(0);
        for (Eigen::Index l = 0; l < angles_deg.size(); ++l)
            mu += (powers(l) / total) * std::polar(Scalar(1), angles_deg(l) * deg);
        Scalar acc(0);
        for (Eigen::Index l = 0; l < angles_deg.size(); ++l)
            acc += (powers(l) / total) * std::norm(std::polar(Scalar(1), angles_deg(l) * deg) - mu);
        return std::sqrt(acc);
    }

    // -10 log10( mean_l |H(f_l)|^2 )
    template <typename Derived>
    typename Eigen::NumTraits<typename Derived::Scalar>::Real pathloss_from_ctf(const Eigen::MatrixBase<Derived> &h)
    {
        using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
        if (h.size() == 0)
            throw std::domain_error("transfer function is empty");
        const Real mean_power = h.cwiseAbs2().sum() / static_cast<Real>(h.size());
        if (!(mean_power > Real(0)))
            throw std::domain_error("transfer function is identically zero (infinite loss)");
        return Real(-10) * std::log10(mean_power);
    }

    struct CdfPoint
    {
        double value;
        double probability;
    };

    // Step CDF at the distinct sample values; ties report the probability of their last index.
    std::vector<CdfPoint> empirical_cdf(std::span<const double> samples);

    // Largest vertical distance between two empirical CDFs (two-sample KS statistic).
    double ks_distance(std::span<const double> a, std::span<const double> b);

    // Linear-interpolated quantile (q in [0, 1]) of a sample.
    double quantile(std::span<const double> samples, double q);
}

#endif
