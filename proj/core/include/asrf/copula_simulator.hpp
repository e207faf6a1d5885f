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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asrf/asrf_engine.hpp"
#include "asrf/portfolio.hpp"

namespace asrf {

enum class CopulaFamily {
    gaussian_one_factor,
    product,
    t_gaussian_margins,
    t_t_margins,
};

/// Dependence structure of the latent asset variables.
struct CopulaSpec {
    CopulaFamily family = CopulaFamily::gaussian_one_factor;
    /// Degrees of freedom; present iff the family is a t family.
    std::optional<int> nu;

    static CopulaSpec gaussian() { return {CopulaFamily::gaussian_one_factor, std::nullopt}; }
    static CopulaSpec product() { return {CopulaFamily::product, std::nullopt}; }
    static CopulaSpec t(int nu) { return {CopulaFamily::t_gaussian_margins, nu}; }
    static CopulaSpec t_t(int nu) { return {CopulaFamily::t_t_margins, nu}; }

    bool is_t() const noexcept {
        return family == CopulaFamily::t_gaussian_margins || family == CopulaFamily::t_t_margins;
    }
    void validate() const;
    /// Short label, e.g. "gaussian", "t nu=10".
    std::string label() const;
};

std::string to_string(CopulaFamily family);

/// How default indicators are generated inside one iteration.
enum class SamplingPath {
    /// Runs of identical credits draw their default count as one
    /// binomial(m, p(y, v)) variate.
    grade_block,
    /// One Z_i comparison per credit.
    per_obligor,
};

struct SimulationConfig {
    std::uint64_t iterations = 1'000'000;
    std::uint64_t seed = 0;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned max_workers = 0;
    SamplingPath path = SamplingPath::grade_block;
};

/// Simulated portfolio percentage losses L_{n,k}.
///
/// Keeps the losses in iteration order (for dumps) and a sorted copy (for
/// order statistics). The empirical CDF is F(l) = #{k : L_k <= l} / N.
class EmpiricalLossDistribution {
public:
    explicit EmpiricalLossDistribution(std::vector<double> losses_by_iteration);

    std::size_t size() const noexcept { return by_iteration_.size(); }
    bool empty() const noexcept { return by_iteration_.empty(); }
    std::span<const double> by_iteration() const noexcept { return by_iteration_; }
    std::span<const double> sorted() const noexcept { return sorted_; }

    double cdf(double l) const;

private:
    std::vector<double> by_iteration_;
    std::vector<double> sorted_;
};

/// (Phi^-1(p) - sqrt(rho) y) / sqrt(1 - rho); Phi of it is conditional_pd.
double default_threshold_gaussian(double p, double rho, double y);

/// (sqrt(v / nu) T_nu^-1(p) - sqrt(rho) y) / sqrt(1 - rho): the bound on Z_i
/// for default given Y = y and chi-square mixing variable V = v.
double default_threshold_t(double p, double rho, int nu, double y, double v);

/// Runs config.iterations independent portfolio scenarios.
///
/// Iteration k draws Y from variate 0, V from the slot block of variate 1 (t
/// families only) and Z_i from variate 2 + i, so results are independent of
/// the worker count and families share common random numbers.
EmpiricalLossDistribution simulate_losses(const Portfolio& portfolio, const CopulaSpec& copula,
                                          const SimulationConfig& config);

/// The ceil(alpha N)-th smallest loss.
double empirical_quantile(const EmpiricalLossDistribution& dist, double alpha);
double empirical_mean(const EmpiricalLossDistribution& dist);
/// empirical_quantile(alpha) - empirical_mean.
CapitalReport simulated_capital(const EmpiricalLossDistribution& dist, double alpha);

/// One loss per line in iteration order, fixed point with 12 decimals.
void write_loss_dump(std::ostream& out, const EmpiricalLossDistribution& dist);

}  // namespace asrf
