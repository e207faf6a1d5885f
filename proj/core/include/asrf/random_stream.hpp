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

#include <array>
#include <cstdint>

namespace asrf {

/// Philox4x32-10 counter-based bijection (Salmon et al., SC'11).
///
/// Maps a 128-bit counter under a 64-bit key to 128 pseudo-random bits with
/// no internal state, so any (key, counter) can be evaluated independently.
class Philox4x32 {
public:
    using counter_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    static counter_type apply(counter_type ctr, key_type key) noexcept;
};

/// Coordinates of one variate in the simulation's random-number lattice.
///
/// The value at (seed, iteration, variate, slot) is a pure function of those
/// four numbers. Workers can therefore evaluate any iteration in any order and
/// still reproduce the same variates bit for bit.
///
/// Slots subdivide a variate into a reserved block; only multi-draw samplers
/// (the chi-square accept-reject) use slots other than zero.
struct RandomStream {
    std::uint64_t seed = 0;
    std::uint64_t iteration = 0;
    std::uint32_t variate = 0;

    RandomStream with_variate(std::uint32_t v) const noexcept { return {seed, iteration, v}; }

    /// Uniform on the open interval (0, 1) with 53 bits of resolution.
    double uniform(std::uint32_t slot = 0) const noexcept;

    /// The raw 64 bits behind uniform(slot).
    std::uint64_t bits(std::uint32_t slot = 0) const noexcept;
};

/// Number of slots reserved for one chi-square draw.
inline constexpr std::uint32_t kChiSquareSlots = 64;

/// Standard normal variate by inversion of stream.uniform().
double sample_std_normal(const RandomStream& stream);

/// Chi-square variate with nu degrees of freedom, drawn as 2 * Gamma(nu / 2)
/// by Marsaglia-Tsang rejection inside the stream's kChiSquareSlots block.
/// Throws DomainError when nu < 1.
double sample_chi_square(const RandomStream& stream, int nu);

/// SplitMix64 finalizer; used to derive independent seeds from a base seed.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace asrf
