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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asrf/asrf_engine.hpp"
#include "asrf/copula_simulator.hpp"
#include "asrf/portfolio.hpp"

namespace asrf {

/// Granularity cap used for the grade-table portfolio: one basis point.
inline constexpr double kDefaultMaxWeight = 1e-4;
/// Regulatory confidence level.
inline constexpr double kRegulatoryAlpha = 0.999;

struct CurvePoint {
    std::string series;
    double alpha = 0.0;
    double value = 0.0;
};

/// Analytic against simulated capital on the same portfolio.
struct ComparisonRecord {
    CapitalReport analytic;
    CapitalReport simulated;
    /// |analytic.capital - simulated.capital| in basis points.
    double gap_bp = 0.0;
};

/// Homogeneous obligor parameters for the convergence study.
struct HomogeneousParams {
    double lgd = 0.0;
    double pd = 0.0;
    double rho = 0.0;
};

/// lo, lo + step, ... up to hi inclusive; hi is appended when the step does
/// not land on it.
std::vector<double> confidence_grid(double lo, double hi, double step);
/// 0.990 .. 0.9995 by 0.0005.
std::vector<double> convergence_grid();
/// 0.900 .. 0.9995 by 0.0025.
std::vector<double> tail_grid();

/// Base seed followed by SplitMix64-derived seeds.
std::vector<std::uint64_t> seed_sequence(std::uint64_t base, std::size_t count);

/// Expands the grade table at max_weight granularity and compares ASRF
/// capital with simulated Gaussian-copula capital at alpha.
ComparisonRecord run_table2(std::span<const GradeRow> rows, const SimulationConfig& config,
                            double alpha = kRegulatoryAlpha, double max_weight = kDefaultMaxWeight);
ComparisonRecord run_table2(const std::filesystem::path& portfolio_csv, const SimulationConfig& config,
                            double alpha = kRegulatoryAlpha, double max_weight = kDefaultMaxWeight);

/// Empirical VaR curves ("n=<size>") of equal-EAD homogeneous portfolios and
/// the asymptotic curve ("asymptote") E[L | Y = Phi^-1(1 - alpha)].
std::vector<CurvePoint> run_convergence(const HomogeneousParams& params, std::span<const std::size_t> sizes,
                                        std::span<const double> alphas, const SimulationConfig& config);

/// Analytic E[L | Y = Phi^-1(1 - alpha)] after scaling every asset
/// correlation by each multiplier; series "<m>*rho".
std::vector<CurvePoint> run_rho_sensitivity(const Portfolio& portfolio, std::span<const double> multipliers,
                                            std::span<const double> alphas);

/// Empirical VaR curves, one per copula, labelled by CopulaSpec::label().
std::vector<CurvePoint> run_copula_sensitivity(const Portfolio& portfolio, std::span<const CopulaSpec> families,
                                               std::span<const double> alphas, const SimulationConfig& config);

/// Pointwise mean of same-shaped curve sets (e.g. one per seed).
std::vector<CurvePoint> average_curves(std::span<const std::vector<CurvePoint>> runs);

/// Value of (series, alpha) in a curve set; throws DomainError if absent.
double curve_value(std::span<const CurvePoint> curves, const std::string& series, double alpha);

/// Bivariate draws (X_1, X_2) from the copula's latent-variable sampler with
/// rho_1 = rho_2 = rho. The t family with Gaussian margins applies
/// Phi^-1(T_nu(.)) so both coordinates are standard normal.
std::vector<std::pair<double, double>> emit_scatter(const CopulaSpec& copula, double rho, std::size_t count,
                                                    std::uint64_t seed);

}  // namespace asrf
