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

#include <benchmark/benchmark.h>

#include <filesystem>

#include "asrf/copula_simulator.hpp"
#include "asrf/experiments.hpp"

#ifndef ASRF_BENCH_DATA_DIR
#error "ASRF_BENCH_DATA_DIR must point at the bundled data directory"
#endif

namespace {

const asrf::Portfolio& table1_portfolio() {
    static const asrf::Portfolio p = asrf::expand_granular(
        asrf::load_grade_table(std::filesystem::path(ASRF_BENCH_DATA_DIR) / "table1.csv"), asrf::kDefaultMaxWeight);
    return p;
}

// Items are simulated portfolio losses.
void run(benchmark::State& state, const asrf::Portfolio& portfolio, const asrf::CopulaSpec& copula,
         asrf::SamplingPath path) {
    const auto iterations = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto losses = asrf::simulate_losses(portfolio, copula, {iterations, seed++, 1, path});
        benchmark::DoNotOptimize(losses.sorted().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(iterations));
}

void BM_Table1GradeBlockGaussian(benchmark::State& state) {
    run(state, table1_portfolio(), asrf::CopulaSpec::gaussian(), asrf::SamplingPath::grade_block);
}
BENCHMARK(BM_Table1GradeBlockGaussian)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_Table1GradeBlockT3(benchmark::State& state) {
    run(state, table1_portfolio(), asrf::CopulaSpec::t(3), asrf::SamplingPath::grade_block);
}
BENCHMARK(BM_Table1GradeBlockT3)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_Table1PerObligorGaussian(benchmark::State& state) {
    run(state, table1_portfolio(), asrf::CopulaSpec::gaussian(), asrf::SamplingPath::per_obligor);
}
BENCHMARK(BM_Table1PerObligorGaussian)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_HomogeneousPerObligor(benchmark::State& state) {
    static const asrf::Portfolio p = asrf::build_homogeneous(1000, 1.0, 0.429, 0.0102, 0.198);
    run(state, p, asrf::CopulaSpec::gaussian(), asrf::SamplingPath::per_obligor);
}
BENCHMARK(BM_HomogeneousPerObligor)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
