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

#include "asrf/copula_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <new>
#include <ostream>
#include <system_error>
#include <thread>

#include "asrf/distributions.hpp"
#include "asrf/errors.hpp"
#include "asrf/random_stream.hpp"

namespace asrf {

namespace {

constexpr std::uint32_t kFactorVariate = 0;
constexpr std::uint32_t kMixingVariate = 1;
constexpr std::uint32_t kFirstObligorVariate = 2;

// A run of consecutive credits with identical weight and risk parameters.
struct Block {
    std::size_t first = 0;
    std::size_t count = 0;
    double loss_per_default = 0.0;  // w_i * lgd_i
    double threshold = 0.0;         // F^-1(p_i) in the latent variable's own margin
    double sqrt_rho = 0.0;
    double inv_sqrt_idio = 0.0;  // 1 / sqrt(1 - rho_i)
};

bool same_credit(const Obligor& a, const Obligor& b) {
    return a.ead == b.ead && a.lgd == b.lgd && a.pd == b.pd && a.rho == b.rho;
}

std::vector<Block> make_blocks(const Portfolio& portfolio, const CopulaSpec& copula) {
    std::vector<Block> blocks;
    const auto w = portfolio.weights();
    std::size_t i = 0;
    while (i < portfolio.size()) {
        const Obligor& o = portfolio[i];
        std::size_t j = i + 1;
        while (j < portfolio.size() && same_credit(o, portfolio[j])) ++j;
        Block b;
        b.first = i;
        b.count = j - i;
        b.loss_per_default = w[i] * o.lgd;
        b.threshold = copula.is_t() ? student_t_inv_cdf(o.pd, *copula.nu) : std_normal_inv_cdf(o.pd);
        b.sqrt_rho = std::sqrt(o.rho);
        b.inv_sqrt_idio = 1.0 / std::sqrt(1.0 - o.rho);
        blocks.push_back(b);
        i = j;
    }
    return blocks;
}

class IterationKernel {
public:
    IterationKernel(const Portfolio& portfolio, const CopulaSpec& copula, const SimulationConfig& config)
        : blocks_(make_blocks(portfolio, copula)), copula_(copula), config_(config) {}

    double loss(std::uint64_t k) const {
        const RandomStream base{config_.seed, k, 0};
        const bool product = copula_.family == CopulaFamily::product;
        double y = 0.0;
        double scale = 1.0;
        if (!product) y = sample_std_normal(base.with_variate(kFactorVariate));
        if (copula_.is_t()) {
            const double v = sample_chi_square(base.with_variate(kMixingVariate), *copula_.nu);
            scale = std::sqrt(v / *copula_.nu);
        }

        double total = 0.0;
        for (const Block& b : blocks_) {
            const double zeta = product ? b.threshold : (scale * b.threshold - b.sqrt_rho * y) * b.inv_sqrt_idio;
            const auto variate = static_cast<std::uint32_t>(kFirstObligorVariate + b.first);
            std::uint64_t defaults = 0;
            if (config_.path == SamplingPath::grade_block) {
                defaults = binomial_inv_cdf(b.count, std_normal_cdf(zeta), base.with_variate(variate).uniform());
            } else {
                for (std::size_t j = 0; j < b.count; ++j) {
                    const double z = sample_std_normal(base.with_variate(variate + static_cast<std::uint32_t>(j)));
                    if (z < zeta) ++defaults;
                }
            }
            // Count first, then scale: both paths land on the same lattice of doubles.
            total += static_cast<double>(defaults) * b.loss_per_default;
        }
        return std::clamp(total, 0.0, 1.0);
    }

private:
    std::vector<Block> blocks_;
    CopulaSpec copula_;
    SimulationConfig config_;
};

unsigned resolve_workers(unsigned requested, std::uint64_t iterations) {
    unsigned workers = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(workers, iterations));
}

}  // namespace

void CopulaSpec::validate() const {
    if (is_t()) {
        ASRF_REQUIRE(nu.has_value(), "t copula requires degrees of freedom");
        ASRF_REQUIRE(*nu >= 1, "degrees of freedom must be >= 1");
    } else {
        ASRF_REQUIRE(!nu.has_value(), "degrees of freedom apply to t copulas only");
    }
}

std::string CopulaSpec::label() const {
    switch (family) {
        case CopulaFamily::gaussian_one_factor: return "gaussian";
        case CopulaFamily::product: return "product";
        case CopulaFamily::t_gaussian_margins: return "t nu=" + std::to_string(nu.value_or(0));
        case CopulaFamily::t_t_margins: return "t-t nu=" + std::to_string(nu.value_or(0));
    }
    return "unknown";
}

std::string to_string(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::gaussian_one_factor: return "gaussian_one_factor";
        case CopulaFamily::product: return "product";
        case CopulaFamily::t_gaussian_margins: return "t_gaussian_margins";
        case CopulaFamily::t_t_margins: return "t_t_margins";
    }
    return "unknown";
}

EmpiricalLossDistribution::EmpiricalLossDistribution(std::vector<double> losses_by_iteration)
    : by_iteration_(std::move(losses_by_iteration)), sorted_(by_iteration_) {
    for (double l : by_iteration_) ASRF_REQUIRE(l >= 0.0 && l <= 1.0, "loss outside [0, 1]");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalLossDistribution::cdf(double l) const {
    ASRF_REQUIRE(!empty(), "empty loss distribution");
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), l);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(size());
}

double default_threshold_gaussian(double p, double rho, double y) {
    ASRF_REQUIRE(p > 0.0 && p < 1.0, "pd must lie in (0, 1)");
    ASRF_REQUIRE(rho > 0.0 && rho < 1.0, "rho must lie in (0, 1)");
    ASRF_REQUIRE(std::isfinite(y), "factor level must be finite");
    return (std_normal_inv_cdf(p) - std::sqrt(rho) * y) / std::sqrt(1.0 - rho);
}

double default_threshold_t(double p, double rho, int nu, double y, double v) {
    ASRF_REQUIRE(p > 0.0 && p < 1.0, "pd must lie in (0, 1)");
    ASRF_REQUIRE(rho > 0.0 && rho < 1.0, "rho must lie in (0, 1)");
    ASRF_REQUIRE(std::isfinite(y), "factor level must be finite");
    ASRF_REQUIRE(v > 0.0 && std::isfinite(v), "mixing variable must be positive");
    return (std::sqrt(v / nu) * student_t_inv_cdf(p, nu) - std::sqrt(rho) * y) / std::sqrt(1.0 - rho);
}

EmpiricalLossDistribution simulate_losses(const Portfolio& portfolio, const CopulaSpec& copula,
                                          const SimulationConfig& config) {
    copula.validate();
    ASRF_REQUIRE(config.iterations >= 1, "iterations must be >= 1");
    ASRF_REQUIRE(portfolio.size() < std::numeric_limits<std::uint32_t>::max() - kFirstObligorVariate,
                 "portfolio too large for the variate index space");

    const IterationKernel kernel(portfolio, copula, config);
    std::vector<double> losses;
    try {
        losses.resize(config.iterations);
    } catch (const std::bad_alloc&) {
        throw ResourceError("cannot allocate " + std::to_string(config.iterations) + " losses");
    } catch (const std::length_error&) {
        throw ResourceError("cannot allocate " + std::to_string(config.iterations) + " losses");
    }

    const unsigned workers = resolve_workers(config.max_workers, config.iterations);
    std::vector<std::exception_ptr> failures(workers);
    auto run_chunk = [&](unsigned w) {
        const std::uint64_t begin = config.iterations * w / workers;
        const std::uint64_t end = config.iterations * (w + 1) / workers;
        try {
            for (std::uint64_t k = begin; k < end; ++k) losses[k] = kernel.loss(k);
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        try {
            for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run_chunk, w);
        } catch (const std::system_error& e) {
            threads.clear();
            throw ResourceError(std::string("cannot start simulation workers: ") + e.what());
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return EmpiricalLossDistribution(std::move(losses));
}

double empirical_quantile(const EmpiricalLossDistribution& dist, double alpha) {
    ASRF_REQUIRE(!dist.empty(), "empty loss distribution");
    ASRF_REQUIRE(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    const double n = static_cast<double>(dist.size());
    const double r = alpha * n;
    auto k = static_cast<std::uint64_t>(std::ceil(r));
    // alpha * N that is integral up to rounding must not step to the next index.
    if (k > 1 && r - static_cast<double>(k - 1) <= 4.0 * std::numeric_limits<double>::epsilon() * r) --k;
    k = std::clamp<std::uint64_t>(k, 1, dist.size());
    return dist.sorted()[k - 1];
}

double empirical_mean(const EmpiricalLossDistribution& dist) {
    ASRF_REQUIRE(!dist.empty(), "empty loss distribution");
    double sum = 0.0;
    for (double l : dist.by_iteration()) sum += l;
    return sum / static_cast<double>(dist.size());
}

CapitalReport simulated_capital(const EmpiricalLossDistribution& dist, double alpha) {
    CapitalReport r;
    r.conditional_or_var_loss = empirical_quantile(dist, alpha);
    r.expected_loss = empirical_mean(dist);
    r.capital = r.conditional_or_var_loss - r.expected_loss;
    r.alpha = alpha;
    r.method = CapitalMethod::simulated;
    return r;
}

void write_loss_dump(std::ostream& out, const EmpiricalLossDistribution& dist) {
    char buf[32];
    for (double l : dist.by_iteration()) {
        std::snprintf(buf, sizeof buf, "%.12f\n", l);
        out << buf;
    }
}

}  // namespace asrf
