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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asrf/experiments.hpp"
#include "cli.hpp"
#include "test_data.hpp"

namespace fs = std::filesystem;
using asrf::cli::run_cli;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "asrf_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

bool single_line(const std::string& s) {
    return !s.empty() && s.find('\n') == s.size() - 1;
}

}  // namespace

TEST_CASE("asrf subcommand reports analytic capital") {
    const auto r = run({"asrf", "--portfolio", test_data::table1_path().string(), "--alpha", "0.999"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto portfolio = asrf::expand_granular(asrf::load_grade_table(test_data::table1_path()), 1e-4);
    CHECK(j["result"]["capital"].get<double>() == asrf::asrf_capital(portfolio, 0.999).capital);
    CHECK(j["config"]["alpha"] == 0.999);
    CHECK(j["config"]["max_weight"] == 1e-4);
    CHECK(j["config"]["portfolio_digest"].get<std::string>().size() == 16);
    CHECK_FALSE(j.contains("wall_time_s"));
}

TEST_CASE("usage errors exit 1 with a one-line diagnostic") {
    const std::string table = test_data::table1_path().string();
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"asrf", "--portfolio", table, "--alpha", "1.5"},
             {"asrf", "--portfolio", table, "--alpha", "0"},
             {"asrf", "--portfolio", table, "--bogus"},
             {"asrf"},
             {"nonsense"},
             {},
             {"simulate", "--portfolio", table, "--copula", "t"},
             {"simulate", "--portfolio", table, "--copula", "gaussian", "--nu", "4"},
             {"simulate", "--portfolio", table, "--copula", "clayton"},
             {"simulate", "--portfolio", table, "--iterations", "0"},
             {"sensitivity-copula", "--portfolio", table, "--families", "gaussian,t:x"},
         }) {
        const auto r = run(args);
        CHECK(r.code == 1);
        CHECK(single_line(r.err));
        CHECK(r.out.empty());
    }
}

TEST_CASE("data and domain errors exit 2") {
    const auto missing = run({"asrf", "--portfolio", "/nonexistent/table.csv"});
    CHECK(missing.code == 2);
    CHECK(single_line(missing.err));

    const fs::path bad = scratch("bad.csv");
    std::ofstream(bad) << "sector,grade,ead,lgd,pd,rho\nbusiness,A,1,0.4,2.5,0.1\n";
    const auto invalid = run({"asrf", "--portfolio", bad.string()});
    CHECK(invalid.code == 2);
    CHECK(invalid.err.find("line 2") != std::string::npos);

    const auto shocked =
        run({"sensitivity-rho", "--portfolio", test_data::table1_path().string(), "--multipliers", "0.9,7"});
    CHECK(shocked.code == 2);

    const auto sector =
        run({"converge", "--portfolio", test_data::table1_path().string(), "--sector", "shipping", "--iterations", "10"});
    CHECK(sector.code == 2);
}

TEST_CASE("simulate is byte-identical across runs and worker counts") {
    const std::string table = test_data::table1_path().string();
    const fs::path dump1 = scratch("dump1.txt"), dump8 = scratch("dump8.txt");
    const auto a = run({"simulate", "--portfolio", table, "--copula", "t", "--nu", "10", "--iterations", "2000",
                        "--seed", "7", "--workers", "1", "--dump-losses", dump1.string()});
    const auto b = run({"simulate", "--portfolio", table, "--copula", "t", "--nu", "10", "--iterations", "2000",
                        "--seed", "7", "--workers", "8", "--dump-losses", dump8.string()});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(slurp(dump1) == slurp(dump8));
    const auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
    CHECK(ja["result"] == jb["result"]);
    CHECK(ja["config"]["copula"] == "t_gaussian_margins");
    CHECK(ja["config"]["nu"] == 10);
    CHECK(ja["config"]["iterations"] == 2000);

    const std::string dump = slurp(dump1);
    CHECK(std::count(dump.begin(), dump.end(), '\n') == 2000);

    const std::vector<std::string> plain{"simulate", "--portfolio", table, "--copula", "t", "--nu", "10",
                                         "--iterations", "2000", "--seed", "7", "--workers", "1"};
    const auto first = run(plain);
    CHECK(first.out == run(plain).out);
    CHECK(nlohmann::json::parse(first.out)["result"] == ja["result"]);
}

TEST_CASE("output file and timing flag") {
    const fs::path json = scratch("table2.json");
    const auto r = run({"table2", "--portfolio", test_data::table1_path().string(), "--iterations", "1000", "--seed",
                        "3", "--output", json.string(), "--report-timing"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto j = nlohmann::json::parse(slurp(json));
    CHECK(j["command"] == "table2");
    CHECK(j.contains("wall_time_s"));
    CHECK(j["result"].contains("gap_bp"));
    CHECK(j["config"]["seed"] == 3);
}

TEST_CASE("ASRF_WORKERS supplies the default worker count") {
    const std::string table = test_data::table1_path().string();
    ::setenv("ASRF_WORKERS", "3", 1);
    const auto ok = run({"simulate", "--portfolio", table, "--iterations", "100"});
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out)["config"]["workers"] == 3);
    ::setenv("ASRF_WORKERS", "many", 1);
    CHECK(run({"simulate", "--portfolio", table, "--iterations", "100"}).code == 1);
    ::unsetenv("ASRF_WORKERS");
}

TEST_CASE("curve commands write CSV") {
    const std::string table = test_data::table1_path().string();
    const fs::path csv = scratch("copula.csv");
    const auto r = run({"sensitivity-copula", "--portfolio", table, "--families", "gaussian,t:10", "--iterations",
                        "2000", "--csv", csv.string()});
    REQUIRE(r.code == 0);
    const std::string text = slurp(csv);
    CHECK(text.rfind("series,alpha,value\n", 0) == 0);
    CHECK(text.find("\nt nu=10,0.9995,") != std::string::npos);

    const auto conv = run({"converge", "--portfolio", table, "--sizes", "1", "--iterations", "500", "--seeds", "2"});
    REQUIRE(conv.code == 0);
    const auto j = nlohmann::json::parse(conv.out);
    CHECK(j["config"]["seeds"] == 2);
    CHECK(j["result"].size() == 2 * asrf::convergence_grid().size());

    const fs::path pairs = scratch("pairs.csv");
    CHECK(run({"scatter", "--copula", "product", "--count", "5", "--csv", pairs.string()}).code == 0);
    CHECK(slurp(pairs).rfind("x1,x2\n", 0) == 0);
}

TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("sensitivity-copula") != std::string::npos);
}
