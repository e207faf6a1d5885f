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

#include "asrf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "asrf/distributions.hpp"
#include "asrf/errors.hpp"
#include "asrf/random_stream.hpp"

namespace asrf {

namespace {

void require_alphas(std::span<const double> alphas) {
    ASRF_REQUIRE(!alphas.empty(), "confidence grid is empty");
    for (double a : alphas) ASRF_REQUIRE(a > 0.0 && a < 1.0, "confidence levels must lie in (0, 1)");
}

// Phi^-1(T_nu(x)) evaluated through the lower tail so it stays finite far
// out in either direction.
double t_to_normal_margin(double x, int nu) {
    const double lower = std::max(student_t_cdf(-std::abs(x), nu), std::numeric_limits<double>::min());
    const double z = std_normal_inv_cdf(lower);
    return x > 0.0 ? -z : z;
}

std::string multiplier_label(double m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g*rho", m);
    return buf;
}

}  // namespace

std::vector<double> confidence_grid(double lo, double hi, double step) {
    ASRF_REQUIRE(lo > 0.0 && hi < 1.0 && lo <= hi && step > 0.0, "invalid confidence grid");
    std::vector<double> grid;
    const double slack = 1e-9 * step;
    for (std::size_t k = 0;; ++k) {
        // Rounded to 1e-10 so grid points print exactly (0.9905, not 0.99049999...).
        const double a = std::round((lo + static_cast<double>(k) * step) * 1e10) / 1e10;
        if (a > hi + slack) break;
        grid.push_back(a);
    }
    if (hi - grid.back() > slack) grid.push_back(hi);
    return grid;
}

std::vector<double> convergence_grid() {
    return confidence_grid(0.990, 0.9995, 0.0005);
}

std::vector<double> tail_grid() {
    return confidence_grid(0.900, 0.9995, 0.0025);
}

std::vector<std::uint64_t> seed_sequence(std::uint64_t base, std::size_t count) {
    std::vector<std::uint64_t> seeds;
    std::uint64_t s = base;
    for (std::size_t i = 0; i < count; ++i) {
        seeds.push_back(i == 0 ? base : (s = splitmix64(s)));
    }
    return seeds;
}

ComparisonRecord run_table2(std::span<const GradeRow> rows, const SimulationConfig& config, double alpha,
                            double max_weight) {
    const Portfolio portfolio = expand_granular(rows, max_weight);
    ComparisonRecord record;
    record.analytic = asrf_capital(portfolio, alpha);
    const auto losses = simulate_losses(portfolio, CopulaSpec::gaussian(), config);
    record.simulated = simulated_capital(losses, alpha);
    record.gap_bp = std::abs(record.analytic.capital - record.simulated.capital) * 1e4;
    return record;
}

ComparisonRecord run_table2(const std::filesystem::path& portfolio_csv, const SimulationConfig& config, double alpha,
                            double max_weight) {
    const auto rows = load_grade_table(portfolio_csv);
    return run_table2(rows, config, alpha, max_weight);
}

std::vector<CurvePoint> run_convergence(const HomogeneousParams& params, std::span<const std::size_t> sizes,
                                        std::span<const double> alphas, const SimulationConfig& config) {
    ASRF_REQUIRE(!sizes.empty(), "no portfolio sizes given");
    require_alphas(alphas);
    std::vector<CurvePoint> curves;
    for (std::size_t n : sizes) {
        const Portfolio portfolio = build_homogeneous(n, 1.0, params.lgd, params.pd, params.rho);
        const auto losses = simulate_losses(portfolio, CopulaSpec::gaussian(), config);
        const std::string series = "n=" + std::to_string(n);
        for (double a : alphas) curves.push_back({series, a, empirical_quantile(losses, a)});
    }
    for (double a : alphas) {
        const double y = -std_normal_inv_cdf(a);
        curves.push_back({"asymptote", a, params.lgd * conditional_pd(params.pd, params.rho, y)});
    }
    return curves;
}

std::vector<CurvePoint> run_rho_sensitivity(const Portfolio& portfolio, std::span<const double> multipliers,
                                            std::span<const double> alphas) {
    ASRF_REQUIRE(!multipliers.empty(), "no correlation multipliers given");
    require_alphas(alphas);
    std::vector<CurvePoint> curves;
    for (double m : multipliers) {
        const Portfolio shocked = scale_correlation(portfolio, m);
        const std::string series = multiplier_label(m);
        for (double a : alphas) {
            curves.push_back({series, a, conditional_expected_loss(shocked, -std_normal_inv_cdf(a))});
        }
    }
    return curves;
}

std::vector<CurvePoint> run_copula_sensitivity(const Portfolio& portfolio, std::span<const CopulaSpec> families,
                                               std::span<const double> alphas, const SimulationConfig& config) {
    ASRF_REQUIRE(!families.empty(), "no copula families given");
    require_alphas(alphas);
    std::vector<CurvePoint> curves;
    for (const auto& family : families) {
        const auto losses = simulate_losses(portfolio, family, config);
        const std::string series = family.label();
        for (double a : alphas) curves.push_back({series, a, empirical_quantile(losses, a)});
    }
    return curves;
}

std::vector<CurvePoint> average_curves(std::span<const std::vector<CurvePoint>> runs) {
    ASRF_REQUIRE(!runs.empty(), "no curve sets to average");
    std::vector<CurvePoint> mean = runs.front();
    for (std::size_t r = 1; r < runs.size(); ++r) {
        ASRF_REQUIRE(runs[r].size() == mean.size(), "curve sets differ in shape");
        for (std::size_t i = 0; i < mean.size(); ++i) {
            ASRF_REQUIRE(runs[r][i].series == mean[i].series && runs[r][i].alpha == mean[i].alpha,
                         "curve sets differ in shape");
            mean[i].value += runs[r][i].value;
        }
    }
    for (auto& p : mean) p.value /= static_cast<double>(runs.size());
    return mean;
}

double curve_value(std::span<const CurvePoint> curves, const std::string& series, double alpha) {
    for (const auto& p : curves) {
        if (p.series == series && std::abs(p.alpha - alpha) < 1e-12) return p.value;
    }
    throw DomainError("no curve point for series '" + series + "'");
}

std::vector<std::pair<double, double>> emit_scatter(const CopulaSpec& copula, double rho, std::size_t count,
                                                    std::uint64_t seed) {
    copula.validate();
    ASRF_REQUIRE(count >= 1, "scatter count must be >= 1");
    ASRF_REQUIRE(rho > 0.0 && rho < 1.0, "rho must lie in (0, 1)");
    const double a = std::sqrt(rho);
    const double b = std::sqrt(1.0 - rho);

    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const RandomStream s{seed, k, 0};
        const double z1 = sample_std_normal(s.with_variate(2));
        const double z2 = sample_std_normal(s.with_variate(3));
        if (copula.family == CopulaFamily::product) {
            pairs.emplace_back(z1, z2);
            continue;
        }
        const double y = sample_std_normal(s.with_variate(0));
        double x1 = a * y + b * z1;
        double x2 = a * y + b * z2;
        if (copula.is_t()) {
            const int nu = *copula.nu;
            const double scale = std::sqrt(nu / sample_chi_square(s.with_variate(1), nu));
            x1 *= scale;
            x2 *= scale;
            if (copula.family == CopulaFamily::t_gaussian_margins) {
                x1 = t_to_normal_margin(x1, nu);
                x2 = t_to_normal_margin(x2, nu);
            }
        }
        pairs.emplace_back(x1, x2);
    }
    return pairs;
}

}  // namespace asrf
