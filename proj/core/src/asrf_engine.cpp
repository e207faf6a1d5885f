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

#include "asrf/asrf_engine.hpp"

#include <algorithm>
#include <cmath>

#include "asrf/errors.hpp"

namespace asrf {

namespace {

void require_probability(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1)");
}

void require_loading(double gamma) {
    ASRF_REQUIRE(std::isfinite(gamma) && gamma != 0.0 && gamma * gamma < 1.0,
                 "factor loading gamma must satisfy 0 < gamma^2 < 1");
}

// G((F^-1(p) - gamma y) / sqrt(1 - gamma^2)) for explicit F, G.
double transform_pd(double p, double gamma, const DistributionFunction& f, const DistributionFunction& g,
                    double y) {
    return g.cdf((f.inverse_cdf(p) - gamma * y) / std::sqrt(1.0 - gamma * gamma));
}

CapitalReport make_report(double conditional, double expected, double alpha) {
    CapitalReport r;
    r.conditional_or_var_loss = conditional;
    r.expected_loss = expected;
    r.capital = conditional - expected;
    r.alpha = alpha;
    r.method = CapitalMethod::analytic;
    return r;
}

}  // namespace

ModelDistributions ModelDistributions::gaussian() {
    return {};
}

ModelDistributions ModelDistributions::t_margins(int nu) {
    ModelDistributions d;
    d.margin_w = student_t(nu);
    d.margin_z = d.margin_w;
    return d;
}

const DistributionFunction& ModelDistributions::margin_w_for(std::size_t i) const {
    if (i < per_obligor.size() && per_obligor[i].first) return *per_obligor[i].first;
    return *margin_w;
}

const DistributionFunction& ModelDistributions::margin_z_for(std::size_t i) const {
    if (i < per_obligor.size() && per_obligor[i].second) return *per_obligor[i].second;
    return *margin_z;
}

std::string_view to_string(CapitalMethod m) {
    return m == CapitalMethod::analytic ? "analytic" : "simulated";
}

double conditional_pd(double p, double rho, double y) {
    require_probability(p, "pd");
    require_probability(rho, "rho");
    ASRF_REQUIRE(std::isfinite(y), "factor level must be finite");
    return std_normal_cdf((std_normal_inv_cdf(p) - std::sqrt(rho) * y) / std::sqrt(1.0 - rho));
}

double conditional_pd_general(double p, double gamma, const ModelDistributions& dists, double y) {
    require_probability(p, "pd");
    require_loading(gamma);
    ASRF_REQUIRE(std::isfinite(y), "factor level must be finite");
    return transform_pd(p, gamma, *dists.margin_w, *dists.margin_z, y);
}

double inverse_conditional_pd(double p, double gamma, const ModelDistributions& dists, double x) {
    require_probability(p, "pd");
    require_probability(x, "conditional pd");
    require_loading(gamma);
    return (dists.margin_w->inverse_cdf(p) - std::sqrt(1.0 - gamma * gamma) * dists.margin_z->inverse_cdf(x)) /
           gamma;
}

double expected_loss(const Portfolio& portfolio) {
    const auto w = portfolio.weights();
    double el = 0.0;
    for (std::size_t i = 0; i < portfolio.size(); ++i) el += w[i] * portfolio[i].lgd * portfolio[i].pd;
    return el;
}

double conditional_expected_loss(const Portfolio& portfolio, double y) {
    ASRF_REQUIRE(std::isfinite(y), "factor level must be finite");
    const auto w = portfolio.weights();
    double total = 0.0;
    for (std::size_t i = 0; i < portfolio.size(); ++i) {
        const auto& o = portfolio[i];
        total += w[i] * o.lgd * conditional_pd(o.pd, o.rho, y);
    }
    return total;
}

double conditional_expected_loss(const Portfolio& portfolio, const ModelDistributions& dists, double y) {
    ASRF_REQUIRE(std::isfinite(y), "factor level must be finite");
    const auto w = portfolio.weights();
    double total = 0.0;
    for (std::size_t i = 0; i < portfolio.size(); ++i) {
        const auto& o = portfolio[i];
        total += w[i] * o.lgd * transform_pd(o.pd, o.loading(), dists.margin_w_for(i), dists.margin_z_for(i), y);
    }
    return total;
}

CapitalReport asrf_capital(const Portfolio& portfolio, double alpha) {
    require_probability(alpha, "alpha");
    // Phi^-1(1 - alpha) = -Phi^-1(alpha); the latter keeps precision near 1.
    const double y = -std_normal_inv_cdf(alpha);
    return make_report(conditional_expected_loss(portfolio, y), expected_loss(portfolio), alpha);
}

CapitalReport general_capital(const Portfolio& portfolio, const ModelDistributions& dists, double alpha) {
    require_probability(alpha, "alpha");
    const double y = dists.systematic->inverse_cdf(1.0 - alpha);
    return make_report(conditional_expected_loss(portfolio, dists, y), expected_loss(portfolio), alpha);
}

double vasicek_cdf(double p, double gamma, double eta, double l, const ModelDistributions& dists) {
    require_probability(p, "pd");
    require_loading(gamma);
    ASRF_REQUIRE(eta > 0.0 && eta <= 1.0, "lgd must lie in (0, 1]");
    ASRF_REQUIRE(l > 0.0 && l < eta, "loss level must lie in (0, lgd)");
    const double z = dists.margin_z->inverse_cdf(l / eta);
    return 1.0 - dists.systematic->cdf((dists.margin_w->inverse_cdf(p) - std::sqrt(1.0 - gamma * gamma) * z) / gamma);
}

double vasicek_quantile(double p, double gamma, double eta, double u, const ModelDistributions& dists) {
    require_probability(p, "pd");
    require_probability(u, "probability level");
    require_loading(gamma);
    ASRF_REQUIRE(eta > 0.0 && eta <= 1.0, "lgd must lie in (0, 1]");
    const double y = dists.systematic->inverse_cdf(1.0 - u);
    return eta * transform_pd(p, gamma, *dists.margin_w, *dists.margin_z, y);
}

}  // namespace asrf
