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

#ifndef canyon_errors_H
#define canyon_errors_H

#include <cstdint>
#include <stdexcept>
#include <string>

namespace canyon
{
    // Input file or configuration could not be parsed or failed validation.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A small-scale parameter function evaluated to an invalid distribution.
    class TableError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // File system failure while exporting; the message names the path.
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Identifies one drop: substreams are derived from (master_seed, drop_index).
    struct SeedRecord
    {
        std::uint64_t master_seed = 0;
        std::uint64_t drop_index = 0;

        bool operator==(const SeedRecord &) const = default;
    };

    // A drop failed during campaign or batch generation.
    class GenerationError : public std::runtime_error
    {
    public:
        GenerationError(const std::string &what, SeedRecord record)
            : std::runtime_error(what + " (master_seed=" + std::to_string(record.master_seed) +
                                 ", drop_index=" + std::to_string(record.drop_index) + ")"),
              seed_record(record)
        {
        }

        SeedRecord seed_record;
    };
}

#endif
