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

#include "asrf/experiment_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>

#include "asrf/errors.hpp"

namespace asrf {

void write_curves_csv(std::ostream& out, std::span<const CurvePoint> curves) {
    out << "series,alpha,value\n";
    char buf[64];
    for (const auto& p : curves) {
        std::snprintf(buf, sizeof buf, ",%.10g,%.8f\n", p.alpha, p.value);
        out << p.series << buf;
    }
}

void write_scatter_csv(std::ostream& out, std::span<const std::pair<double, double>> pairs) {
    out << "x1,x2\n";
    char buf[64];
    for (const auto& [x1, x2] : pairs) {
        std::snprintf(buf, sizeof buf, "%.10f,%.10f\n", x1, x2);
        out << buf;
    }
}

nlohmann::ordered_json to_json(const CapitalReport& report) {
    nlohmann::ordered_json j;
    j["method"] = std::string(to_string(report.method));
    j["alpha"] = report.alpha;
    j[report.method == CapitalMethod::analytic ? "conditional_expected_loss" : "var"] =
        report.conditional_or_var_loss;
    j["expected_loss"] = report.expected_loss;
    j["capital"] = report.capital;
    return j;
}

nlohmann::ordered_json to_json(const ComparisonRecord& record) {
    nlohmann::ordered_json j;
    j["analytic"] = to_json(record.analytic);
    j["simulated"] = to_json(record.simulated);
    j["gap_bp"] = record.gap_bp;
    return j;
}

nlohmann::ordered_json to_json(std::span<const CurvePoint> curves) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : curves) {
        arr.push_back({{"series", p.series}, {"alpha", p.alpha}, {"value", p.value}});
    }
    return arr;
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a64_hex(bytes);
}

}  // namespace asrf
