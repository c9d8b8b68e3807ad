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

#include "canyon/stats.hpp"
#include "canyon/synthesis.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace canyon;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Covered tests:
// - Power delay profile with and without binning
// - RMS delay spread
// - Unit-phasor angular spread
// - Path loss from a transfer function
// - Empirical CDF, two-sample distance, quantiles

static Eigen::VectorXd vec(std::initializer_list<double> v)
{
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double e : v)
        x(i++) = e;
    return x;
}

TEST_CASE("Stats - power delay profile")
{
    const std::vector<Tap> one{{50.0, 0.1}};
    const auto p1 = pdp(one);
    REQUIRE(p1.powers.size() == 1);
    CHECK(p1.delays_ns(0) == 50.0);
    CHECK_THAT(p1.powers(0), WithinRel(0.01, 1e-15));

    const std::vector<Tap> two{{10.0, 1.0}, {20.0, std::complex<double>(0.0, 2.0)}};
    const auto binned = pdp(two, 33.3);
    REQUIRE(binned.powers.size() == 1);
    CHECK(binned.powers(0) == 5.0);
    CHECK(binned.delays_ns(0) == 0.0);
    CHECK(pdp(two).powers.size() == 2);

    const std::vector<Tap> spread{{5.0, 1.0}, {40.0, 1.0}, {41.0, 1.0}, {200.0, 1.0}};
    const auto b = pdp(spread, sounder_bin_width_ns);
    REQUIRE(b.powers.size() == 3);
    CHECK(b.powers(1) == 2.0);
    CHECK_THAT(b.delays_ns(1), WithinRel(sounder_bin_width_ns, 1e-15));

    CHECK_THROWS_AS(pdp(std::vector<Tap>{}), std::domain_error);
}

TEST_CASE("Stats - RMS delay spread")
{
    CHECK(rms_delay_spread(vec({0.0, 100.0}), vec({1.0, 1.0})) == 50.0);
    CHECK(rms_delay_spread(vec({734.2}), vec({0.3})) == 0.0);
    const double oracle = std::sqrt((0.0 * 0.0 * 1 + 100.0 * 100.0 * 3) / 4.0 - std::pow((100.0 * 3) / 4.0, 2));
    CHECK_THAT(rms_delay_spread(vec({0.0, 100.0}), vec({1.0, 3.0})), WithinRel(oracle, 1e-12));
    CHECK_THAT(rms_delay_spread(vec({0.0, 100.0}), vec({1.0, 3.0})), WithinAbs(43.3013, 1e-4));
    CHECK_THROWS_AS(rms_delay_spread(vec({0.0, 1.0}), vec({0.0, 0.0})), std::domain_error);
    CHECK_THROWS_AS(rms_delay_spread(vec({0.0, 1.0}), vec({1.0})), std::domain_error);

    // shift and scale invariance, float instantiation
    const auto d = vec({3.0, 17.0, 90.0, 410.0}), p = vec({0.2, 1.0, 0.5, 0.01});
    const double ds = rms_delay_spread(d, p);
    CHECK_THAT(rms_delay_spread((d.array() + 1234.5).matrix(), p), WithinAbs(ds, 1e-9));
    CHECK_THAT(rms_delay_spread(d, (p * 1e-7).eval()), WithinAbs(ds, 1e-9));
    CHECK_THAT(double(rms_delay_spread(d.cast<float>().eval(), p.cast<float>().eval())), WithinRel(ds, 1e-5));

    Pdp profile{d, p, std::nullopt};
    CHECK(rms_delay_spread(profile) == ds);
}

TEST_CASE("Stats - angular spread")
{
    CHECK(angular_spread(vec({42.0}), vec({3.0})) == 0.0);
    CHECK(angular_spread(vec({0.0, 180.0}), vec({1.0, 1.0})) == 1.0);
    // mu = (1 + j) / 2, each phasor sits |1/2 - j/2|^2 = 1/2 away from it
    const std::complex<double> mu(0.5, 0.5);
    const double oracle = std::sqrt(0.5 * std::norm(std::complex<double>(1.0, 0.0) - mu) +
                                    0.5 * std::norm(std::complex<double>(0.0, 1.0) - mu));
    CHECK_THAT(angular_spread(vec({0.0, 90.0}), vec({1.0, 1.0})), WithinRel(oracle, 1e-12));
    CHECK_THAT(angular_spread(vec({0.0, 90.0}), vec({1.0, 1.0})), WithinAbs(std::sqrt(0.5), 1e-12));
    CHECK_THROWS_AS(angular_spread(vec({0.0, 90.0}), vec({1.0})), std::domain_error);
    CHECK_THROWS_AS(angular_spread(vec({0.0, 90.0}), vec({0.0, 0.0})), std::domain_error);

    // wrap-around: 350 and 10 degrees behave like -10 and 10
    const double a = angular_spread(vec({350.0, 10.0}), vec({1.0, 2.0}));
    CHECK_THAT(a, WithinAbs(angular_spread(vec({-10.0, 10.0}), vec({1.0, 2.0})), 1e-12));
    CHECK_THAT(a, WithinAbs(angular_spread(vec({80.0, 100.0}), vec({1.0, 2.0})), 1e-12));
    CHECK_THAT(a, WithinAbs(angular_spread(vec({350.0, 10.0}), vec({5.0, 10.0})), 1e-12));
}

TEST_CASE("Stats - path loss from the transfer function")
{
    CHECK(pathloss_from_ctf(Eigen::VectorXcd::Ones(64)) == 0.0);
    CHECK_THAT(pathloss_from_ctf((Eigen::VectorXcd::Ones(64) * 0.1).eval()), WithinAbs(20.0, 1e-12));
    Eigen::VectorXcd h(2);
    h << 1.0, 0.0;
    CHECK_THAT(pathloss_from_ctf(h), WithinAbs(-10.0 * std::log10(0.5), 1e-12));
    CHECK_THAT(pathloss_from_ctf(h), WithinAbs(3.0103, 1e-4));
    CHECK_THROWS_AS(pathloss_from_ctf(Eigen::VectorXcd::Zero(8)), std::domain_error);
    CHECK_THROWS_AS(pathloss_from_ctf(Eigen::VectorXcd(0)), std::domain_error);
}

TEST_CASE("Stats - empirical CDF")
{
    const std::vector<double> single{5.0};
    const auto c1 = empirical_cdf(single);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].value == 5.0);
    CHECK(c1[0].probability == 1.0);

    const std::vector<double> pair{2.0, 1.0};
    const auto c2 = empirical_cdf(pair);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0].value == 1.0);
    CHECK(c2[0].probability == 0.5);
    CHECK(c2[1].probability == 1.0);

    const std::vector<double> ties{4.0, 2.0, 2.0};
    const auto c3 = empirical_cdf(ties);
    REQUIRE(c3.size() == 2);
    CHECK(c3[0].value == 2.0);
    CHECK_THAT(c3[0].probability, WithinAbs(2.0 / 3.0, 1e-15));
    CHECK(c3[1].value == 4.0);
    CHECK(c3[1].probability == 1.0);

    CHECK_THROWS_AS(empirical_cdf(std::vector<double>{}), std::domain_error);
}

TEST_CASE("Stats - two-sample distance and quantiles")
{
    const std::vector<double> a{1.0, 2.0, 3.0, 4.0}, b{1.0, 2.0, 3.0, 4.0}, c{10.0, 11.0};
    CHECK(ks_distance(a, b) == 0.0);
    CHECK(ks_distance(a, c) == 1.0);
    const std::vector<double> d{2.5, 3.5};
    CHECK(ks_distance(a, d) == 0.5);

    CHECK(quantile(a, 0.0) == 1.0);
    CHECK(quantile(a, 1.0) == 4.0);
    CHECK(quantile(a, 0.5) == 2.5);
    CHECK_THROWS(quantile(a, 1.5));
    CHECK_THROWS(quantile(std::vector<double>{}, 0.5));
}
