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

#include <string_view>
#include <utility>
#include <vector>

#include "asrf/distributions.hpp"
#include "asrf/portfolio.hpp"

namespace asrf {

/// Distribution functions of a single-factor conditional independence model.
///
/// Obligor i defaults when X_i = g_i Y + sqrt(1 - g_i^2) Z_i falls below
/// F_i^-1(p_i), where
///   margin_w (F): distribution of X_i, used to map p_i to a threshold,
///   margin_z (G): distribution of the idiosyncratic term Z_i,
///   systematic (H): distribution of the factor Y.
/// Per-obligor (F_i, G_i) overrides may be supplied; index i is the obligor's
/// position in the portfolio.
struct ModelDistributions {
    DistributionPtr margin_w = standard_normal();
    DistributionPtr margin_z = standard_normal();
    DistributionPtr systematic = standard_normal();
    std::vector<std::pair<DistributionPtr, DistributionPtr>> per_obligor;

    /// F = G = H = standard normal.
    static ModelDistributions gaussian();
    /// F = G = Student t(nu), H = standard normal.
    static ModelDistributions t_margins(int nu);

    const DistributionFunction& margin_w_for(std::size_t i) const;
    const DistributionFunction& margin_z_for(std::size_t i) const;
};

enum class CapitalMethod { analytic, simulated };

std::string_view to_string(CapitalMethod m);

/// Capital charge at confidence alpha, all fields as fractions of total EAD.
/// `conditional_or_var_loss` is E[L | Y = H^-1(1 - alpha)] for analytic
/// reports and the empirical alpha-quantile for simulated ones.
struct CapitalReport {
    double conditional_or_var_loss = 0.0;
    double expected_loss = 0.0;
    double capital = 0.0;
    double alpha = 0.0;
    CapitalMethod method = CapitalMethod::analytic;
};

/// Gaussian conditional PD: Phi((Phi^-1(p) - sqrt(rho) y) / sqrt(1 - rho)).
double conditional_pd(double p, double rho, double y);

/// G((F^-1(p) - gamma y) / sqrt(1 - gamma^2)) with the model's default margins.
double conditional_pd_general(double p, double gamma, const ModelDistributions& dists, double y);

/// The factor level y at which conditional_pd_general equals x:
/// y = (F^-1(p) - sqrt(1 - gamma^2) G^-1(x)) / gamma.
double inverse_conditional_pd(double p, double gamma, const ModelDistributions& dists, double x);

/// sum_i w_i lgd_i p_i
double expected_loss(const Portfolio& portfolio);

/// sum_i w_i lgd_i p_i(y) under the Gaussian model.
double conditional_expected_loss(const Portfolio& portfolio, double y);

/// sum_i w_i lgd_i p_i(y) under arbitrary margins, gamma_i = sqrt(rho_i).
double conditional_expected_loss(const Portfolio& portfolio, const ModelDistributions& dists, double y);

/// Gaussian ASRF capital: E[L | Y = Phi^-1(1 - alpha)] - E[L].
CapitalReport asrf_capital(const Portfolio& portfolio, double alpha);

/// Capital under general margins: E[L | Y = H^-1(1 - alpha)] - E[L].
CapitalReport general_capital(const Portfolio& portfolio, const ModelDistributions& dists, double alpha);

/// Limiting loss distribution of a homogeneous portfolio:
/// P(L <= l) = 1 - H((F^-1(p) - sqrt(1 - gamma^2) G^-1(l / eta)) / gamma).
double vasicek_cdf(double p, double gamma, double eta, double l,
                   const ModelDistributions& dists = ModelDistributions::gaussian());

/// Exact inverse of vasicek_cdf in l.
double vasicek_quantile(double p, double gamma, double eta, double u,
                        const ModelDistributions& dists = ModelDistributions::gaussian());

}  // namespace asrf
