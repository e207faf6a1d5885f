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

#include "asrf/random_stream.hpp"

#include <cmath>

#include "asrf/distributions.hpp"
#include "asrf/errors.hpp"

namespace asrf {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::counter_type Philox4x32::apply(counter_type ctr, key_type key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t RandomStream::bits(std::uint32_t slot) const noexcept {
    const Philox4x32::counter_type ctr = {static_cast<std::uint32_t>(iteration),
                                          static_cast<std::uint32_t>(iteration >> 32), variate, slot};
    const Philox4x32::key_type key = {static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)};
    const auto out = Philox4x32::apply(ctr, key);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double RandomStream::uniform(std::uint32_t slot) const noexcept {
    // Midpoint of one of 2^53 equal cells: never 0, never 1.
    return (static_cast<double>(bits(slot) >> 11) + 0.5) * 0x1.0p-53;
}

double sample_std_normal(const RandomStream& stream) {
    return std_normal_inv_cdf(stream.uniform());
}

double sample_chi_square(const RandomStream& stream, int nu) {
    ASRF_REQUIRE(nu >= 1, "chi-square degrees of freedom must be >= 1");

    // Gamma(a) for a < 1 is drawn as Gamma(a + 1) * U^(1/a); the last slot
    // holds that U, and also the fallback uniform.
    const double shape = 0.5 * nu;
    const bool boost_shape = shape < 1.0;
    const double a = boost_shape ? shape + 1.0 : shape;
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    const std::uint32_t last = kChiSquareSlots - 1;

    double gamma = -1.0;
    for (std::uint32_t slot = 0; slot + 1 < last; slot += 2) {
        const double x = std_normal_inv_cdf(stream.uniform(slot));
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = stream.uniform(slot + 1);
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            gamma = d * v;
            break;
        }
    }
    if (gamma < 0.0) {
        // Block exhausted (probability below 1e-40): exact inversion keeps the
        // draw a function of the same coordinates.
        return chi_square_inv_cdf(stream.uniform(last), nu);
    }
    if (boost_shape) gamma *= std::pow(stream.uniform(last), 1.0 / shape);
    return 2.0 * gamma;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace asrf
