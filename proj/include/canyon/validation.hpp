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

#ifndef canyon_validation_H
#define canyon_validation_H

#include "canyon/smallscale.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace canyon
{
    struct PropertyResult
    {
        std::string suite; // module name
        std::string name;  // invariant name
        bool passed = false;
        std::string detail;
        double seconds = 0.0;
    };

    struct ValidationReport
    {
        std::vector<PropertyResult> results;

        bool all_passed() const;
        std::string to_json() const;
    };

    struct ValidationOptions
    {
        // Only suites whose name starts with this prefix run; empty runs everything.
        std::string filter;
        // Table under test; overrides are checked by the smallscale suite.
        SmallScaleTable table = SmallScaleTable::defaults();
        // Drops per preset for the empirical environment-trend check.
        std::size_t trend_drops = 20000;
        unsigned workers = 1;
    };

    std::vector<std::string> validation_suites(); // morphology, pathloss, smallscale, synthesis, stats, harness

    ValidationReport run_validation(const ValidationOptions &options = {});

    // Asymptotic Kolmogorov survival function Q(lambda) with the Stephens small-sample correction;
    // returns the p-value of a one-sample KS statistic d on n samples.
    double kolmogorov_pvalue(double d, std::size_t n);

    // One-sample KS statistic of `samples` against the analytic CDF of `spec`.
    double ks_statistic(std::vector<double> samples, const DistributionSpec &spec);

    // Expectation of the integerized count (round half up, clamp >= 1) of a normal draw.
    double integerized_count_mean(const DistributionSpec &spec);
}

#endif
