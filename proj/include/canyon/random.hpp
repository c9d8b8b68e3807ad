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

#ifndef canyon_random_H
#define canyon_random_H

#include "canyon/errors.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>

namespace canyon
{
    // Seeded random stream. Every draw is derived from the 64-bit Mersenne Twister output with
    // explicit transforms (no std:: distributions), so sequences are identical across standard libraries.
    class RandomStream
    {
    public:
        // Substream for (master_seed, stream_index); distinct indices give independent streams.
        explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_index = 0)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                              static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32),
                              0x63616e79u}; // "cany"
            engine_.seed(seq);
        }

        explicit RandomStream(SeedRecord record) : RandomStream(record.master_seed, record.drop_index) {}

        // [0, 1), 53-bit resolution
        double uniform()
        {
            return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        }

        // (0, 1), never hits either endpoint
        double uniform_open()
        {
            return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
        }

        // Standard normal via the Box-Muller transform; the second variate of each pair is cached.
        double gaussian()
        {
            if (spare_)
            {
                const double z = *spare_;
                spare_.reset();
                return z;
            }
            const double r = std::sqrt(-2.0 * std::log(uniform_open()));
            const double angle = 2.0 * std::numbers::pi * uniform();
            spare_ = r * std::sin(angle);
            return r * std::cos(angle);
        }

        std::uint64_t next_u64() { return engine_(); }

    private:
        std::mt19937_64 engine_;
        std::optional<double> spare_;
    };
}

#endif
