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

#include <cstdint>
#include <memory>
#include <string>

#include "asrf/random_stream.hpp"

namespace asrf {

// Standard Gaussian.
double std_normal_pdf(double x);
double std_normal_cdf(double x);
/// Wichura's AS241 (PPND16) rational approximation; relative error ~1e-16.
double std_normal_inv_cdf(double u);

// Student's t with nu degrees of freedom (nu >= 1).
double student_t_pdf(double x, int nu);
double student_t_cdf(double x, int nu);
/// Inverse regularized incomplete beta followed by Newton polishing on the cdf.
double student_t_inv_cdf(double u, int nu);

// Chi-square with nu degrees of freedom.
double chi_square_cdf(double x, int nu);
double chi_square_inv_cdf(double u, int nu);

/// Smallest k in [0, trials] with P(Binomial(trials, prob) <= k) >= u.
///
/// Chop-down inversion: walks from zero when the mean is small, otherwise
/// from the mode with the cdf anchored by the incomplete beta function.
std::uint64_t binomial_inv_cdf(std::uint64_t trials, double prob, double u);

/// Continuous, strictly increasing univariate distribution function.
class DistributionFunction {
public:
    virtual ~DistributionFunction() = default;

    virtual double cdf(double x) const = 0;
    virtual double inverse_cdf(double u) const = 0;
    virtual std::string name() const = 0;

    /// Inversion sampling from a single uniform.
    virtual double sample(const RandomStream& stream) const { return inverse_cdf(stream.uniform()); }
};

using DistributionPtr = std::shared_ptr<const DistributionFunction>;

class StandardNormal final : public DistributionFunction {
public:
    double cdf(double x) const override { return std_normal_cdf(x); }
    double inverse_cdf(double u) const override { return std_normal_inv_cdf(u); }
    std::string name() const override { return "normal"; }
};

class StudentT final : public DistributionFunction {
public:
    explicit StudentT(int nu);

    int nu() const noexcept { return nu_; }
    double cdf(double x) const override { return student_t_cdf(x, nu_); }
    double inverse_cdf(double u) const override { return student_t_inv_cdf(u, nu_); }
    std::string name() const override { return "t" + std::to_string(nu_); }

private:
    int nu_;
};

DistributionPtr standard_normal();
DistributionPtr student_t(int nu);

}  // namespace asrf
