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

#ifndef canyon_synthesis_H
#define canyon_synthesis_H

#include "canyon/errors.hpp"
#include "canyon/morphology.hpp"
#include "canyon/pathloss.hpp"
#include "canyon/random.hpp"
#include "canyon/smallscale.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace canyon
{
    struct Mpc
    {
        double power_db = 0.0;
        double delay_ns = 0.0;
        double aoa_deg = 0.0; // [0, 360)
        double eoa_deg = 0.0; // [0, 180], measured from +z
        double phase_rad = 0.0; // [0, 2*pi)
    };

    struct ClusterCenter
    {
        double power_db = 0.0;
        double delay_ns = 0.0;
        double aoa_deg = 0.0;
        double eoa_deg = 0.0;
    };

    struct Cluster
    {
        ClusterCenter center;
        std::vector<Mpc> mpcs;
    };

    struct SynthesisOptions
    {
        // Intra-cluster offsets use the table family with scale kappa * (table scale).
        double kappa = 0.1;
        // Rescale powers so the linear MPC powers sum to one.
        bool normalize = true;
    };

    // One snapshot realization of the clustered channel.
    struct ChannelDrop
    {
        EnvFactor env;
        LinkState state = LinkState::LOS;
        double distance_m = 0.0;
        double pl_db = 0.0;
        std::vector<Cluster> clusters;
        bool normalized = false;
        SeedRecord seed_record;
        SConvention s_convention = SConvention::RawS;
        double kappa = 0.1;
        bool extrapolated = false;
        std::size_t rejected_delay_draws = 0;

        std::size_t mpc_count() const;
        // Linear power of every MPC, cluster-major order.
        Eigen::VectorXd linear_powers() const;
    };

    // Pure function of its arguments: the random stream is derived from `seed`.
    ChannelDrop generate_drop(const EnvFactor &env, LinkState state, double distance_m, const PathLossConfig &plcfg,
                              SeedRecord seed, const SynthesisOptions &options = {},
                              const SmallScaleTable &table = SmallScaleTable::defaults());

    // Shifts all powers by -10 log10(sum 10^(beta/10)).
    ChannelDrop normalize_powers(ChannelDrop drop);

    // Same MPC set with fresh independent uniform phases.
    ChannelDrop redraw_phases(ChannelDrop drop, RandomStream &rng);

    double wrap_azimuth_deg(double deg);
    double fold_elevation_deg(double deg);

    // Planar receive array: elements on an x-y grid, broadside +z, spacing in wavelengths.
    struct ArrayGeometry
    {
        Eigen::Index rows = 4;
        Eigen::Index cols = 8;
        double spacing_wavelengths = 0.5;

        Eigen::Index size() const { return rows * cols; }
        void validate() const;
    };

    // Phase-only response, element (m, n) at index m * cols + n:
    //   exp(j 2 pi spacing (m u_x + n u_y)),  u = (sin(eoa) cos(aoa), sin(eoa) sin(aoa), cos(eoa)).
    template <typename Scalar = double>
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> steering_vector(const ArrayGeometry &geom, Scalar aoa_deg,
                                                                         Scalar eoa_deg)
    {
        geom.validate();
        constexpr Scalar deg = std::numbers::pi_v<Scalar> / Scalar(180);
        const Scalar ux = std::sin(eoa_deg * deg) * std::cos(aoa_deg * deg);
        const Scalar uy = std::sin(eoa_deg * deg) * std::sin(aoa_deg * deg);
        const Scalar k = Scalar(2) * std::numbers::pi_v<Scalar> * static_cast<Scalar>(geom.spacing_wavelengths);

        Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> a(geom.size());
        for (Eigen::Index m = 0; m < geom.rows; ++m)
            for (Eigen::Index n = 0; n < geom.cols; ++n)
                a(m * geom.cols + n) = std::polar(Scalar(1), k * (Scalar(m) * ux + Scalar(n) * uy));
        return a;
    }

    struct Tap
    {
        double delay_ns = 0.0;
        std::complex<double> amplitude;
    };

    // Scalar impulse response: one tap per MPC, amplitude e^{j psi} sqrt(10^{beta/10} 10^{-PL/10}),
    // sorted by delay; delays stay continuous.
    std::vector<Tap> cir(const ChannelDrop &drop);

    // Array impulse response: amplitudes is (elements x taps), all elements share the delays.
    struct ArrayCir
    {
        Eigen::VectorXd delays_ns;
        Eigen::MatrixXcd amplitudes;
    };

    ArrayCir cir(const ChannelDrop &drop, const ArrayGeometry &geom);

    // Uniform frequency grid of offsets from the carrier.
    struct FrequencyGrid
    {
        double start_hz = -15.0e6;
        double spacing_hz = 30.0e6 / 1024.0;
        Eigen::Index count = 1024;

        // Sounder layout: 1024 points across 30 MHz centred on the carrier.
        static FrequencyGrid sounder() { return {}; }
        Eigen::VectorXd offsets_hz() const;
    };

    // H(f) = sum_taps a exp(-j 2 pi f tau) on a uniform grid.
    Eigen::VectorXcd transfer_function(std::span<const Tap> taps, const FrequencyGrid &grid = FrequencyGrid::sounder());
    // Same on an arbitrary list of frequency offsets.
    Eigen::VectorXcd transfer_function(std::span<const Tap> taps, const Eigen::VectorXd &f_hz);
    // Per-element responses, (elements x frequencies).
    Eigen::MatrixXcd transfer_function(const ArrayCir &cir, const FrequencyGrid &grid = FrequencyGrid::sounder());

    Eigen::VectorXcd transfer_function(const ChannelDrop &drop, const FrequencyGrid &grid = FrequencyGrid::sounder());
}

#endif
