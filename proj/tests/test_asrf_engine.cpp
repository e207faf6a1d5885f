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

#include <doctest.h>

#include <cmath>
#include <random>

#include "asrf/asrf_engine.hpp"
#include "asrf/errors.hpp"
#include "oracles.hpp"
#include "test_data.hpp"

using namespace asrf;

namespace {

// Conditional PD composed from the integration-based oracle functions.
double oracle_conditional_pd(double p, double rho, double y) {
    return oracle::normal_cdf((oracle::normal_quantile(p) - std::sqrt(rho) * y) / std::sqrt(1.0 - rho));
}

Portfolio table1_granular() {
    return expand_granular(load_grade_table(test_data::table1_path()), 1e-4);
}

Portfolio random_portfolio(std::mt19937_64& gen, std::size_t n) {
    std::uniform_real_distribution<double> ead(0.1, 100.0), lgd(0.0, 1.0), pd(1e-4, 0.2), rho(0.01, 0.4);
    std::vector<Obligor> obligors;
    for (std::size_t i = 0; i < n; ++i) obligors.push_back({ead(gen), lgd(gen), pd(gen), rho(gen), "s", "g"});
    return Portfolio(std::move(obligors));
}

}  // namespace

TEST_CASE("conditional_pd") {
    // rho -> 0: the factor term vanishes like sqrt(rho) * |y|.
    CHECK(std::abs(conditional_pd(0.03, 1e-12, 0.0) - 0.03) <= 1e-9);
    CHECK(std::abs(conditional_pd(0.03, 1e-12, 1e-3) - 0.03) <= 1e-9);
    CHECK(std::abs(conditional_pd(0.03, 1e-12, -3.09) - 0.03) <= 1e-6);

    const double y = std_normal_inv_cdf(0.001);
    const double p = 0.037, rho = 0.12;
    CHECK(conditional_pd(p, rho, y) ==
          doctest::Approx(std_normal_cdf((std_normal_inv_cdf(p) + std::sqrt(rho) * std_normal_inv_cdf(0.999)) /
                                         std::sqrt(1.0 - rho)))
              .epsilon(1e-13));

    const double expected = oracle_conditional_pd(0.01, 0.2, -3.090);
    CHECK(expected == doctest::Approx(0.1455).epsilon(1e-3));
    CHECK(std::abs(conditional_pd(0.01, 0.2, -3.090) - expected) <= 1e-11);

    // Strictly decreasing in y.
    double prev = 2.0;
    for (double yy = -6.0; yy <= 6.0; yy += 0.1) {
        const double q = conditional_pd(0.01, 0.2, yy);
        CHECK(q < prev);
        CHECK(q > 0.0);
        prev = q;
    }
    CHECK_THROWS_AS(conditional_pd(0.0, 0.2, 0.0), DomainError);
    CHECK_THROWS_AS(conditional_pd(0.01, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(conditional_pd(0.01, 0.2, NAN), DomainError);
}

TEST_CASE("conditional_pd_general") {
    const auto gauss = ModelDistributions::gaussian();
    CHECK(std::abs(conditional_pd_general(0.01, std::sqrt(0.2), gauss, -3.090) - conditional_pd(0.01, 0.2, -3.090)) <=
          1e-12);

    // y = 0 collapses to G(F^-1(p) / sqrt(1 - gamma^2)).
    const auto t10 = ModelDistributions::t_margins(10);
    CHECK(conditional_pd_general(0.05, 0.4, t10, 0.0) ==
          doctest::Approx(student_t_cdf(student_t_inv_cdf(0.05, 10) / std::sqrt(1 - 0.16), 10)).epsilon(1e-14));

    const double expected = oracle::t_cdf((oracle::t_quantile(0.05, 10) + 0.4 * 2.0) / std::sqrt(1.0 - 0.16), 10);
    CHECK(std::abs(conditional_pd_general(0.05, 0.4, t10, -2.0) - expected) <= 1e-10);

    CHECK_THROWS_AS(conditional_pd_general(0.05, 1.0, gauss, 0.0), DomainError);
    CHECK_THROWS_AS(conditional_pd_general(0.05, 0.0, gauss, 0.0), DomainError);
}

TEST_CASE("conditional_pd_general with Gaussian margins equals conditional_pd") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> pd(1e-5, 0.5), rho(1e-4, 0.9), y(-5.0, 5.0);
    const auto gauss = ModelDistributions::gaussian();
    for (int i = 0; i < 1000; ++i) {
        const double p = pd(gen), r = rho(gen), yy = y(gen);
        CHECK(std::abs(conditional_pd_general(p, std::sqrt(r), gauss, yy) - conditional_pd(p, r, yy)) <= 1e-12);
    }
}

TEST_CASE("inverse_conditional_pd") {
    const auto gauss = ModelDistributions::gaussian();
    const auto t10 = ModelDistributions::t_margins(10);
    for (const auto* d : {&gauss, &t10}) {
        for (double y0 : {-4.0, -1.0, 0.0, 2.5}) {
            const double x = conditional_pd_general(0.02, 0.45, *d, y0);
            CHECK(std::abs(inverse_conditional_pd(0.02, 0.45, *d, x) - y0) <= 1e-9);
        }
    }
    // x = p: root-find conditional_pd_general(y) = p on a decreasing function.
    const double p = 0.01, g = 0.45;
    const double root = oracle::bisect([&](double y) { return -conditional_pd_general(p, g, gauss, y); }, -p, -50, 50);
    CHECK(std::abs(inverse_conditional_pd(p, g, gauss, p) - root) <= 1e-9);
    CHECK(root == doctest::Approx(std_normal_inv_cdf(p) * (1.0 - std::sqrt(1.0 - g * g)) / g).epsilon(1e-9));

    CHECK(inverse_conditional_pd(0.01, 0.45, gauss, 1.0 - 1e-12) < -10.0);
    CHECK_THROWS_AS(inverse_conditional_pd(0.01, 0.0, gauss, 0.5), DomainError);
}

TEST_CASE("expected_loss") {
    CHECK(expected_loss(build_homogeneous(1, 1.0, 1.0, 0.01, 0.2)) == doctest::Approx(0.01).epsilon(1e-15));
    const Portfolio two({{1.0, 0.5, 0.02, 0.2, "", ""}, {1.0, 1.0, 0.04, 0.2, "", ""}});
    CHECK(expected_loss(two) == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(std::abs(expected_loss(table1_granular()) - 0.0031) <= 0.00005);
}

TEST_CASE("conditional_expected_loss") {
    const Portfolio p = table1_granular();
    // Independent route: per grade row, oracle conditional PD.
    const auto rows = load_grade_table(test_data::table1_path());
    const double y = oracle::normal_quantile(0.001);
    double expected = 0.0, total = 0.0;
    for (const auto& r : rows) total += r.ead;
    for (const auto& r : rows) expected += r.ead / total * r.lgd * oracle_conditional_pd(r.pd, r.rho, y);
    CHECK(std::abs(conditional_expected_loss(p, std_normal_inv_cdf(0.001)) - expected) <= 1e-11);

    CHECK(conditional_expected_loss(p, 40.0) <= expected_loss(p) * 1e-3);

    const Portfolio homo = build_homogeneous(37, 1.0, 0.429, 0.0102, 0.198);
    for (double yy : {-3.0, 0.0, 1.0}) {
        CHECK(conditional_expected_loss(homo, yy) == doctest::Approx(0.429 * conditional_pd(0.0102, 0.198, yy)));
    }

    double prev = 2.0;
    for (int i = 0; i < 100; ++i) {
        const double yy = -6.0 + 12.0 * i / 99.0;
        const double v = conditional_expected_loss(p, yy);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("asrf_capital") {
    const double expected = oracle_conditional_pd(0.01, 0.15, -oracle::normal_quantile(0.999)) - 0.01;
    CHECK(expected == doctest::Approx(0.1003).epsilon(1e-3));
    const auto report = asrf_capital(build_homogeneous(1, 1.0, 1.0, 0.01, 0.15), 0.999);
    CHECK(std::abs(report.capital - expected) <= 1e-11);
    CHECK(report.capital == doctest::Approx(report.conditional_or_var_loss - report.expected_loss).epsilon(1e-15));
    CHECK(report.alpha == 0.999);
    CHECK(report.method == CapitalMethod::analytic);

    const auto flat = asrf_capital(build_homogeneous(10, 1.0, 1.0, 0.01, 1e-6), 0.999);
    CHECK(flat.capital >= 0.0);
    CHECK(flat.capital < 1e-4);

    CHECK_THROWS_AS(asrf_capital(build_homogeneous(1, 1.0, 1.0, 0.01, 0.15), 1.0), DomainError);
    CHECK_THROWS_AS(asrf_capital(build_homogeneous(1, 1.0, 1.0, 0.01, 0.15), 0.0), DomainError);
}

TEST_CASE("asrf_capital is nondecreasing in alpha and in each rho") {
    const Portfolio p = table1_granular();
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double a = 0.9 + (0.9999 - 0.9) * i / 200.0;
        const double k = asrf_capital(p, a).capital;
        CHECK(k >= prev);
        prev = k;
    }
    // Single-credit grid over the table's parameter ranges.
    for (double pd : {0.0001, 0.001, 0.01, 0.05, 0.1856, 0.2}) {
        double last = -1.0;
        for (double rho = 0.05; rho <= 0.30; rho += 0.01) {
            const double k = asrf_capital(build_homogeneous(1, 1.0, 0.5, pd, rho), 0.999).capital;
            CHECK_MESSAGE(k >= last, "pd=" << pd << " rho=" << rho);
            last = k;
        }
    }
}

TEST_CASE("general_capital") {
    std::mt19937_64 gen(3);
    const auto gauss = ModelDistributions::gaussian();
    for (int trial = 0; trial < 30; ++trial) {
        const Portfolio p = random_portfolio(gen, 1 + trial * 3);
        for (double a : {0.5, 0.9, 0.999}) {
            const auto g = general_capital(p, gauss, a);
            const auto r = asrf_capital(p, a);
            CHECK(std::abs(g.capital - r.capital) <= 1e-12);
            CHECK(std::abs(g.conditional_or_var_loss - r.conditional_or_var_loss) <= 1e-12);
        }
    }
    CHECK(std::abs(general_capital(table1_granular(), gauss, 0.999).capital -
                   asrf_capital(table1_granular(), 0.999).capital) <= 1e-12);

    // t margins, Gaussian factor, single obligor.
    const auto t10 = ModelDistributions::t_margins(10);
    const double p = 0.01, rho = 0.15;
    const double g = std::sqrt(rho);
    const double oracle_value =
        oracle::t_cdf((oracle::t_quantile(p, 10) - g * oracle::normal_quantile(0.001)) / std::sqrt(1.0 - rho), 10) - p;
    CHECK(std::abs(general_capital(build_homogeneous(1, 1.0, 1.0, p, rho), t10, 0.999).capital - oracle_value) <=
          1e-9);

    // H^-1(0.5) = 0.
    const Portfolio homo = build_homogeneous(4, 1.0, 0.6, 0.03, 0.2);
    const double at_median = 0.6 * student_t_cdf(student_t_inv_cdf(0.03, 10) / std::sqrt(0.8), 10) - 0.6 * 0.03;
    CHECK(general_capital(homo, t10, 0.5).capital == doctest::Approx(at_median).epsilon(1e-12));
}

TEST_CASE("per-obligor margin overrides") {
    const Portfolio p({{1.0, 1.0, 0.02, 0.2, "", ""}, {1.0, 1.0, 0.02, 0.2, "", ""}});
    ModelDistributions mixed = ModelDistributions::gaussian();
    mixed.per_obligor = {{nullptr, nullptr}, {student_t(5), student_t(5)}};
    const double y = -2.0;
    const double expected = 0.5 * conditional_pd(0.02, 0.2, y) +
                            0.5 * conditional_pd_general(0.02, std::sqrt(0.2), ModelDistributions::t_margins(5), y);
    CHECK(conditional_expected_loss(p, mixed, y) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("vasicek_cdf and vasicek_quantile") {
    const double p = 0.02, rho = 0.1, eta = 1.0;
    const double g = std::sqrt(rho);
    const double median = eta * std_normal_cdf(std_normal_inv_cdf(p) / std::sqrt(1.0 - rho));
    CHECK(vasicek_cdf(p, g, eta, median) == doctest::Approx(0.5).epsilon(1e-12));

    const double expected =
        1.0 - oracle::normal_cdf((oracle::normal_quantile(p) - std::sqrt(1.0 - rho) * oracle::normal_quantile(0.05)) / g);
    CHECK(expected == doctest::Approx(0.9406).epsilon(1e-3));
    CHECK(std::abs(vasicek_cdf(p, g, eta, 0.05) - expected) <= 1e-10);

    CHECK(vasicek_quantile(p, g, 0.45, 0.999) ==
          doctest::Approx(0.45 * conditional_pd(p, rho, std_normal_inv_cdf(0.001))).epsilon(1e-13));

    double prev = -1.0;
    for (int i = 1; i < 200; ++i) {
        const double l = 0.2 * i / 200.0;
        const double c = vasicek_cdf(p, g, 0.45, l);
        CHECK(c > prev);
        prev = c;
        if (c > 1e-12 && c < 1.0 - 1e-12) {
            CHECK(std::abs(vasicek_quantile(p, g, 0.45, c) - l) <= 1e-9);
        }
    }
    CHECK_THROWS_AS(vasicek_cdf(p, g, 0.45, 0.45), DomainError);
    CHECK_THROWS_AS(vasicek_cdf(p, g, 0.45, 0.0), DomainError);
    CHECK_THROWS_AS(vasicek_quantile(p, g, 0.45, 1.0), DomainError);
}

TEST_CASE("quantile substitution identity on a grid") {
    const double p = 0.0102, rho = 0.198, eta = 0.429;
    for (int i = 1; i <= 1000; ++i) {
        const double u = i / 1001.0;
        CHECK(std::abs(vasicek_quantile(p, std::sqrt(rho), eta, u) -
                       eta * conditional_pd(p, rho, std_normal_inv_cdf(1.0 - u))) <= 1e-10);
    }
}
