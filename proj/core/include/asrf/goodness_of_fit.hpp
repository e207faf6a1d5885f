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

#pragma once

#include <functional>
#include <span>

namespace asrf {

/// sup_x |F_N(x) - F(x)| for the empirical CDF F_N of an ascending sample.
///
/// Both one-sided limits of the empirical step function are compared at each
/// distinct sample value, so ties (atoms) count at their full height.
double ks_statistic(std::span<const double> sorted_sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance between ascending samples.
double ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b);

}  // namespace asrf
