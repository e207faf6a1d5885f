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

#include "asrf/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "asrf/errors.hpp"

namespace asrf {

namespace {

void require_finite(double x) {
    ASRF_REQUIRE(std::isfinite(x), "argument must be finite");
}

void require_open_unit(double u) {
    ASRF_REQUIRE(u > 0.0 && u < 1.0, "probability must lie in (0, 1)");
}

void require_dof(int nu) {
    ASRF_REQUIRE(nu >= 1, "degrees of freedom must be >= 1");
}

template <std::size_t N>
double horner(const double (&c)[N], double x) {
    double r = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) r = r * x + c[i];
    return r;
}

// AS241 PPND16 coefficients, lowest order first.
constexpr double kA[] = {3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
                         1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
                         3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kB[] = {1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2, 5.3941960214247511077e+3,
                         2.1213794301586595867e+4, 3.9307895800092710610e+4, 2.8729085735721942674e+4,
                         5.2264952788528545610e+3};
constexpr double kC[] = {1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
                         3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
                         2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kD[] = {1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
                         1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
                         1.05075007164441684324e-9};
constexpr double kE[] = {6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
                         2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
                         2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kF[] = {1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
                         7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
                         2.04426310338993978564e-15};

// Upper tail P(T > x) for x >= 0, choosing the incomplete beta form that keeps
// full relative precision.
double student_t_upper_tail(double x, double nu) {
    const double x2 = x * x;
    if (nu > 2.0 * x2) {
        return 0.5 * boost::math::ibetac(0.5, 0.5 * nu, x2 / (nu + x2));
    }
    return 0.5 * boost::math::ibeta(0.5 * nu, 0.5, nu / (nu + x2));
}

}  // namespace

double std_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_cdf(double x) {
    require_finite(x);
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double std_normal_inv_cdf(double u) {
    require_open_unit(u);
    const double q = u - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * horner(kA, r) / horner(kB, r);
    }
    double r = std::sqrt(-std::log(q < 0.0 ? u : 1.0 - u));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = horner(kC, r) / horner(kD, r);
    } else {
        r -= 5.0;
        z = horner(kE, r) / horner(kF, r);
    }
    return q < 0.0 ? -z : z;
}

double student_t_pdf(double x, int nu) {
    require_dof(nu);
    const double n = nu;
    const double log_norm = std::lgamma(0.5 * (n + 1.0)) - std::lgamma(0.5 * n) - 0.5 * std::log(n * std::numbers::pi);
    return std::exp(log_norm - 0.5 * (n + 1.0) * std::log1p(x * x / n));
}

double student_t_cdf(double x, int nu) {
    require_dof(nu);
    require_finite(x);
    if (x == 0.0) return 0.5;
    const double tail = student_t_upper_tail(std::abs(x), nu);
    return x > 0.0 ? 1.0 - tail : tail;
}

double student_t_inv_cdf(double u, int nu) {
    require_dof(nu);
    require_open_unit(u);
    if (u == 0.5) return 0.0;
    const double n = nu;
    const double tail = u < 0.5 ? u : 1.0 - u;  // P(T > t) for the positive root
    double t;
    if (tail < 0.25) {
        // x = nu / (nu + t^2) is small in the far tail.
        const double x = boost::math::ibeta_inv(0.5 * n, 0.5, 2.0 * tail);
        t = std::sqrt(n * (1.0 - x) / x);
    } else {
        // y = t^2 / (nu + t^2) is small near the median.
        const double y = boost::math::ibetac_inv(0.5, 0.5 * n, 2.0 * tail);
        t = std::sqrt(n * y / (1.0 - y));
    }
    for (int i = 0; i < 2; ++i) {
        const double pdf = student_t_pdf(t, nu);
        if (!(pdf > 0.0)) break;
        const double step = (student_t_upper_tail(t, n) - tail) / pdf;
        if (!std::isfinite(step)) break;
        t += step;
    }
    return u < 0.5 ? -t : t;
}

double chi_square_cdf(double x, int nu) {
    require_dof(nu);
    require_finite(x);
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(0.5 * nu, 0.5 * x);
}

double chi_square_inv_cdf(double u, int nu) {
    require_dof(nu);
    require_open_unit(u);
    return 2.0 * boost::math::gamma_p_inv(0.5 * nu, u);
}

std::uint64_t binomial_inv_cdf(std::uint64_t trials, double prob, double u) {
    ASRF_REQUIRE(prob >= 0.0 && prob <= 1.0, "binomial probability must lie in [0, 1]");
    require_open_unit(u);
    if (trials == 0 || prob == 0.0) return 0;
    if (prob == 1.0) return trials;

    const double m = static_cast<double>(trials);
    const double ratio = prob / (1.0 - prob);
    // Below this mass a further step cannot change the draw.
    constexpr double kNegligible = 1e-18;

    if (m * prob <= 40.0) {
        double pmf = std::exp(m * std::log1p(-prob));
        double cdf = pmf;
        std::uint64_t k = 0;
        while (u > cdf && k < trials) {
            pmf *= (m - static_cast<double>(k)) / static_cast<double>(k + 1) * ratio;
            ++k;
            cdf += pmf;
            if (pmf < kNegligible && static_cast<double>(k) > m * prob) break;
        }
        return k;
    }

    auto k = static_cast<std::uint64_t>(std::floor((m + 1.0) * prob));
    k = std::min(k, trials);
    const double kd = static_cast<double>(k);
    double cdf = k == trials ? 1.0 : boost::math::ibetac(kd + 1.0, m - kd, prob);
    double pmf = std::exp(std::lgamma(m + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(m - kd + 1.0) +
                          kd * std::log(prob) + (m - kd) * std::log1p(-prob));

    if (u <= cdf) {
        while (k > 0 && u <= cdf - pmf) {
            cdf -= pmf;
            pmf *= static_cast<double>(k) / (m - static_cast<double>(k) + 1.0) / ratio;
            --k;
            if (pmf < kNegligible) break;
        }
        return k;
    }
    while (u > cdf && k < trials) {
        pmf *= (m - static_cast<double>(k)) / static_cast<double>(k + 1) * ratio;
        ++k;
        cdf += pmf;
        if (pmf < kNegligible) break;
    }
    return k;
}

StudentT::StudentT(int nu) : nu_(nu) {
    require_dof(nu);
}

DistributionPtr standard_normal() {
    static const auto instance = std::make_shared<const StandardNormal>();
    return instance;
}

DistributionPtr student_t(int nu) {
    return std::make_shared<const StudentT>(nu);
}

}  // namespace asrf
