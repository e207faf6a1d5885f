// Copyright 2026 The asrf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "asrf/goodness_of_fit.hpp"

#include <algorithm>
#include <cmath>

#include "asrf/errors.hpp"

namespace asrf {

double ks_statistic(std::span<const double> sorted_sample, const std::function<double(double)>& cdf) {
    ASRF_REQUIRE(!sorted_sample.empty(), "empty sample");
    const double n = static_cast<double>(sorted_sample.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < sorted_sample.size()) {
        const double x = sorted_sample[i];
        std::size_t j = i;
        while (j < sorted_sample.size() && sorted_sample[j] == x) ++j;
        const double f = cdf(x);
        d = std::max({d, std::abs(static_cast<double>(i) / n - f), std::abs(static_cast<double>(j) / n - f)});
        i = j;
    }
    return d;
}

double ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b) {
    ASRF_REQUIRE(!sorted_a.empty() && !sorted_b.empty(), "empty sample");
    const double na = static_cast<double>(sorted_a.size());
    const double nb = static_cast<double>(sorted_b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sorted_a.size() && j < sorted_b.size()) {
        const double x = std::min(sorted_a[i], sorted_b[j]);
        while (i < sorted_a.size() && sorted_a[i] == x) ++i;
        while (j < sorted_b.size() && sorted_b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace asrf
