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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "asrf/errors.hpp"
#include "asrf/experiment_io.hpp"
#include "asrf/experiments.hpp"

namespace asrf::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad flag values that CLI11 cannot see on its own (copula names, env vars).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string portfolio;
    double alpha = kRegulatoryAlpha;
    std::string copula = "gaussian";
    std::optional<int> nu;
    std::optional<std::uint64_t> iterations;
    std::uint64_t seed = 0;
    std::optional<unsigned> workers;
    std::string output;
    std::string csv;
    std::string dump_losses;
    double max_weight = kDefaultMaxWeight;
    std::vector<std::size_t> sizes{50, 100, 200, 500, 1000, 2000};
    std::vector<double> multipliers{0.8, 0.9, 1.0, 1.1, 1.2};
    std::vector<std::string> families{"gaussian", "t:30", "t:10", "t:3"};
    double rho = 0.170;
    std::size_t count = 10'000;
    std::string sector = "business";
    std::size_t seeds = 1;
    std::string path = "grade-block";
    bool report_timing = false;
};

// Headline runs use the full 10^6 draws; the curve studies default to a
// desk-scale 2 * 10^5.
constexpr std::uint64_t kFullIterations = 1'000'000;
constexpr std::uint64_t kDeskIterations = 200'000;

CopulaSpec parse_copula(const std::string& name, std::optional<int> nu) {
    if (name == "gaussian" || name == "product") {
        if (nu) throw UsageError("--nu applies only to t copulas");
        return name == "gaussian" ? CopulaSpec::gaussian() : CopulaSpec::product();
    }
    if (name == "t" || name == "t-gaussian" || name == "t-t") {
        if (!nu) throw UsageError("copula '" + name + "' needs --nu");
        return name == "t-t" ? CopulaSpec::t_t(*nu) : CopulaSpec::t(*nu);
    }
    throw UsageError("unknown copula '" + name + "' (gaussian, product, t, t-gaussian, t-t)");
}

// "gaussian", "product", "t:10", "t-gaussian:10", "t-t:10".
CopulaSpec parse_family(const std::string& token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) return parse_copula(token, std::nullopt);
    int nu = 0;
    const char* first = token.data() + colon + 1;
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, nu);
    if (ec != std::errc() || ptr != last || nu < 1) throw UsageError("bad degrees of freedom in '" + token + "'");
    return parse_copula(token.substr(0, colon), nu);
}

unsigned resolve_workers(const Options& o) {
    if (o.workers) return *o.workers;
    const char* env = std::getenv("ASRF_WORKERS");
    if (env == nullptr || *env == '\0') return 0;
    unsigned w = 0;
    const char* last = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, last, w);
    if (ec != std::errc() || ptr != last) throw UsageError(std::string("ASRF_WORKERS is not a count: '") + env + "'");
    return w;
}

SimulationConfig simulation_config(const Options& o, std::uint64_t default_iterations) {
    SimulationConfig c;
    c.iterations = o.iterations.value_or(default_iterations);
    c.seed = o.seed;
    c.max_workers = resolve_workers(o);
    if (o.path == "grade-block") {
        c.path = SamplingPath::grade_block;
    } else if (o.path == "per-obligor") {
        c.path = SamplingPath::per_obligor;
    } else {
        throw UsageError("unknown sampling path '" + o.path + "' (grade-block, per-obligor)");
    }
    return c;
}

Json portfolio_echo(const Options& o) {
    return {{"portfolio", o.portfolio}, {"portfolio_digest", file_digest(o.portfolio)}};
}

void echo_simulation(Json& config, const SimulationConfig& c) {
    config["iterations"] = c.iterations;
    config["seed"] = c.seed;
    config["workers"] = c.max_workers;
    config["path"] = c.path == SamplingPath::grade_block ? "grade-block" : "per-obligor";
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ResourceError("cannot write '" + path + "'");
    return f;
}

void write_csv_if_requested(const Options& o, const std::vector<CurvePoint>& curves) {
    if (o.csv.empty()) return;
    auto f = open_output(o.csv);
    write_curves_csv(f, curves);
}

struct Outcome {
    Json config;
    Json result;
};

Outcome cmd_asrf(const Options& o) {
    Outcome r{portfolio_echo(o), {}};
    r.config["alpha"] = o.alpha;
    r.config["max_weight"] = o.max_weight;
    const Portfolio portfolio = expand_granular(load_grade_table(o.portfolio), o.max_weight);
    r.config["obligors"] = portfolio.size();
    r.result = to_json(asrf_capital(portfolio, o.alpha));
    return r;
}

Outcome cmd_simulate(const Options& o) {
    const CopulaSpec copula = parse_copula(o.copula, o.nu);
    const SimulationConfig sim = simulation_config(o, kFullIterations);
    Outcome r{portfolio_echo(o), {}};
    r.config["alpha"] = o.alpha;
    r.config["max_weight"] = o.max_weight;
    r.config["copula"] = to_string(copula.family);
    if (copula.nu) r.config["nu"] = *copula.nu;
    echo_simulation(r.config, sim);
    const Portfolio portfolio = expand_granular(load_grade_table(o.portfolio), o.max_weight);
    r.config["obligors"] = portfolio.size();
    const auto losses = simulate_losses(portfolio, copula, sim);
    if (!o.dump_losses.empty()) {
        auto f = open_output(o.dump_losses);
        write_loss_dump(f, losses);
        r.config["dump_losses"] = o.dump_losses;
    }
    r.result = to_json(simulated_capital(losses, o.alpha));
    return r;
}

Outcome cmd_table2(const Options& o) {
    const SimulationConfig sim = simulation_config(o, kFullIterations);
    Outcome r{portfolio_echo(o), {}};
    r.config["alpha"] = o.alpha;
    r.config["max_weight"] = o.max_weight;
    echo_simulation(r.config, sim);
    r.result = to_json(run_table2(load_grade_table(o.portfolio), sim, o.alpha, o.max_weight));
    return r;
}

std::vector<CurvePoint> average_over_seeds(const Options& o, const SimulationConfig& base,
                                           const std::function<std::vector<CurvePoint>(const SimulationConfig&)>& run) {
    if (o.seeds < 1) throw UsageError("--seeds must be >= 1");
    std::vector<std::vector<CurvePoint>> runs;
    for (std::uint64_t s : seed_sequence(base.seed, o.seeds)) {
        SimulationConfig c = base;
        c.seed = s;
        runs.push_back(run(c));
    }
    return average_curves(runs);
}

Outcome cmd_converge(const Options& o) {
    const SimulationConfig sim = simulation_config(o, kDeskIterations);
    Outcome r{portfolio_echo(o), {}};
    const auto rows = load_grade_table(o.portfolio);
    const auto segment = aggregate(rows, o.sector == "all" ? std::nullopt : std::optional(o.sector));
    const HomogeneousParams params{segment.lgd, segment.pd, segment.rho};
    r.config["sector"] = o.sector;
    r.config["lgd"] = params.lgd;
    r.config["pd"] = params.pd;
    r.config["rho"] = params.rho;
    r.config["sizes"] = o.sizes;
    r.config["seeds"] = o.seeds;
    echo_simulation(r.config, sim);
    const auto alphas = convergence_grid();
    const auto curves = average_over_seeds(
        o, sim, [&](const SimulationConfig& c) { return run_convergence(params, o.sizes, alphas, c); });
    write_csv_if_requested(o, curves);
    r.result = to_json(std::span<const CurvePoint>(curves));
    return r;
}

Outcome cmd_sensitivity_rho(const Options& o) {
    Outcome r{portfolio_echo(o), {}};
    r.config["max_weight"] = o.max_weight;
    r.config["multipliers"] = o.multipliers;
    const Portfolio portfolio = expand_granular(load_grade_table(o.portfolio), o.max_weight);
    const auto curves = run_rho_sensitivity(portfolio, o.multipliers, tail_grid());
    write_csv_if_requested(o, curves);
    r.result = to_json(std::span<const CurvePoint>(curves));
    return r;
}

Outcome cmd_sensitivity_copula(const Options& o) {
    std::vector<CopulaSpec> families;
    for (const auto& token : o.families) families.push_back(parse_family(token));
    const SimulationConfig sim = simulation_config(o, kDeskIterations);
    Outcome r{portfolio_echo(o), {}};
    r.config["max_weight"] = o.max_weight;
    r.config["families"] = o.families;
    r.config["seeds"] = o.seeds;
    echo_simulation(r.config, sim);
    const Portfolio portfolio = expand_granular(load_grade_table(o.portfolio), o.max_weight);
    const auto alphas = tail_grid();
    const auto curves = average_over_seeds(
        o, sim, [&](const SimulationConfig& c) { return run_copula_sensitivity(portfolio, families, alphas, c); });
    write_csv_if_requested(o, curves);
    r.result = to_json(std::span<const CurvePoint>(curves));
    return r;
}

Outcome cmd_scatter(const Options& o) {
    const CopulaSpec copula = parse_copula(o.copula, o.nu);
    Outcome r;
    r.config["copula"] = to_string(copula.family);
    if (copula.nu) r.config["nu"] = *copula.nu;
    r.config["rho"] = o.rho;
    r.config["count"] = o.count;
    r.config["seed"] = o.seed;
    const auto pairs = emit_scatter(copula, o.rho, o.count, o.seed);
    if (!o.csv.empty()) {
        auto f = open_output(o.csv);
        write_scatter_csv(f, pairs);
        r.result = {{"csv", o.csv}, {"count", pairs.size()}};
    } else {
        auto arr = Json::array();
        for (const auto& [x1, x2] : pairs) arr.push_back({x1, x2});
        r.result = {{"pairs", std::move(arr)}};
    }
    return r;
}

const CLI::Validator kOpenUnit(
    [](std::string& s) -> std::string {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) return "not a number: " + s;
        return v > 0.0 && v < 1.0 ? std::string() : "must lie in the open interval (0, 1): " + s;
    },
    "(0,1)");

void add_portfolio(CLI::App& cmd, Options& o) {
    cmd.add_option("--portfolio", o.portfolio, "Grade table CSV (sector,grade,ead,lgd,pd,rho)")->required();
}

void add_output(CLI::App& cmd, Options& o) {
    cmd.add_option("--output", o.output, "Write the JSON summary here instead of stdout");
    cmd.add_flag("--report-timing", o.report_timing, "Include wall time in the JSON summary");
}

void add_simulation(CLI::App& cmd, Options& o) {
    cmd.add_option("--iterations", o.iterations, "Monte Carlo draws")->check(CLI::PositiveNumber);
    cmd.add_option("--seed", o.seed, "Base seed");
    cmd.add_option("--workers", o.workers, "Worker threads (default: $ASRF_WORKERS, else all cores)");
    cmd.add_option("--path", o.path, "Sampling path: grade-block or per-obligor");
}

void add_granularity(CLI::App& cmd, Options& o) {
    cmd.add_option("--max-weight", o.max_weight, "Largest single-credit share of EAD")->check(CLI::Range(1e-9, 1.0));
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Asymptotic single risk factor capital and copula loss simulation", "asrf"};
    app.require_subcommand(1);
    app.fallthrough(false);

    auto* asrf = app.add_subcommand("asrf", "Analytic ASRF capital for a grade table");
    add_portfolio(*asrf, o);
    asrf->add_option("--alpha", o.alpha, "Confidence level")->check(kOpenUnit);
    add_granularity(*asrf, o);
    add_output(*asrf, o);

    auto* simulate = app.add_subcommand("simulate", "Simulated VaR capital under a copula");
    add_portfolio(*simulate, o);
    simulate->add_option("--alpha", o.alpha, "Confidence level")->check(kOpenUnit);
    simulate->add_option("--copula", o.copula, "gaussian, product, t, t-gaussian or t-t");
    simulate->add_option("--nu", o.nu, "Degrees of freedom for t copulas")->check(CLI::PositiveNumber);
    simulate->add_option("--dump-losses", o.dump_losses, "Write every simulated loss, in iteration order");
    add_simulation(*simulate, o);
    add_granularity(*simulate, o);
    add_output(*simulate, o);

    auto* table2 = app.add_subcommand("table2", "Analytic against simulated capital");
    add_portfolio(*table2, o);
    table2->add_option("--alpha", o.alpha, "Confidence level")->check(kOpenUnit);
    add_simulation(*table2, o);
    add_granularity(*table2, o);
    add_output(*table2, o);

    auto* converge = app.add_subcommand("converge", "VaR of finite homogeneous portfolios against the asymptote");
    add_portfolio(*converge, o);
    converge->add_option("--sector", o.sector, "Sector whose aggregate parameters are used, or 'all'");
    converge->add_option("--sizes", o.sizes, "Portfolio sizes")->delimiter(',')->check(CLI::PositiveNumber);
    converge->add_option("--seeds", o.seeds, "Seeds to average over");
    converge->add_option("--csv", o.csv, "Also write curves as CSV");
    add_simulation(*converge, o);
    add_output(*converge, o);

    auto* srho = app.add_subcommand("sensitivity-rho", "Analytic tail under scaled asset correlations");
    add_portfolio(*srho, o);
    srho->add_option("--multipliers", o.multipliers, "Correlation multipliers")->delimiter(',');
    srho->add_option("--csv", o.csv, "Also write curves as CSV");
    add_granularity(*srho, o);
    add_output(*srho, o);

    auto* scop = app.add_subcommand("sensitivity-copula", "Simulated VaR curves per copula family");
    add_portfolio(*scop, o);
    scop->add_option("--families", o.families, "Families, e.g. gaussian,t:30,t:10,t:3")->delimiter(',');
    scop->add_option("--seeds", o.seeds, "Seeds to average over");
    scop->add_option("--csv", o.csv, "Also write curves as CSV");
    add_simulation(*scop, o);
    add_granularity(*scop, o);
    add_output(*scop, o);

    auto* scatter = app.add_subcommand("scatter", "Bivariate latent-variable draws");
    scatter->add_option("--copula", o.copula, "gaussian, product, t, t-gaussian or t-t");
    scatter->add_option("--nu", o.nu, "Degrees of freedom for t copulas")->check(CLI::PositiveNumber);
    scatter->add_option("--rho", o.rho, "Asset correlation of both coordinates")->check(kOpenUnit);
    scatter->add_option("--count", o.count, "Number of pairs")->check(CLI::PositiveNumber);
    scatter->add_option("--seed", o.seed, "Seed");
    scatter->add_option("--csv", o.csv, "Write pairs as CSV instead of embedding them in the JSON");
    add_output(*scatter, o);

    if (!args.empty() && !args.front().starts_with('-') && app.get_subcommand_no_throw(args.front()) == nullptr) {
        err << "asrf: unknown subcommand '" << args.front() << "'\n";
        return kExitUsage;
    }
    try {
        // CLI11 consumes arguments from the back.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "asrf: " << e.what() << '\n';
        return kExitUsage;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    const std::string& name = chosen->get_name();
    const auto start = std::chrono::steady_clock::now();
    try {
        Outcome outcome;
        if (name == "asrf") {
            outcome = cmd_asrf(o);
        } else if (name == "simulate") {
            outcome = cmd_simulate(o);
        } else if (name == "table2") {
            outcome = cmd_table2(o);
        } else if (name == "converge") {
            outcome = cmd_converge(o);
        } else if (name == "sensitivity-rho") {
            outcome = cmd_sensitivity_rho(o);
        } else if (name == "sensitivity-copula") {
            outcome = cmd_sensitivity_copula(o);
        } else {
            outcome = cmd_scatter(o);
        }

        Json doc;
        doc["command"] = name;
        doc["config"] = std::move(outcome.config);
        doc["result"] = std::move(outcome.result);
        if (o.report_timing) {
            doc["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        const std::string text = doc.dump(2) + "\n";
        if (o.output.empty()) {
            out << text;
        } else {
            auto f = open_output(o.output);
            f << text;
        }
    } catch (const UsageError& e) {
        err << "asrf: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "asrf: " << e.what() << '\n';
        return kExitData;
    } catch (const ParseError& e) {
        err << "asrf: " << e.what() << '\n';
        return kExitData;
    } catch (const ResourceError& e) {
        err << "asrf: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

}  // namespace asrf::cli
