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

#include "asrf/portfolio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <utility>

#include "asrf/errors.hpp"

namespace asrf {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_number(const std::string& cell, std::size_t line, const char* column) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ParseError(line, std::string("malformed number in column '") + column + "': '" + cell + "'");
    }
    return value;
}

bool inside_margin(double x) {
    return x >= kProbabilityMargin && x <= 1.0 - kProbabilityMargin;
}

const char* bound_violation(double ead, double lgd, double pd, double rho) {
    if (!(ead > 0.0)) return "ead must be > 0";
    if (!(lgd >= 0.0 && lgd <= 1.0)) return "lgd must lie in [0, 1]";
    if (!inside_margin(pd)) return "pd must lie in (0, 1), at least 1e-6 from either end";
    if (!inside_margin(rho)) return "rho must lie in (0, 1), at least 1e-6 from either end";
    return nullptr;
}

}  // namespace

void validate_obligor(const Obligor& o) {
    if (const char* msg = bound_violation(o.ead, o.lgd, o.pd, o.rho)) throw DomainError(msg);
}

Portfolio::Portfolio(std::vector<Obligor> obligors) : obligors_(std::move(obligors)) {
    ASRF_REQUIRE(!obligors_.empty(), "empty portfolio");
    for (const auto& o : obligors_) validate_obligor(o);
    for (const auto& o : obligors_) total_ead_ += o.ead;
    weights_.reserve(obligors_.size());
    for (const auto& o : obligors_) weights_.push_back(o.ead / total_ead_);
}

double Portfolio::max_weight() const {
    return *std::max_element(weights_.begin(), weights_.end());
}

std::vector<GradeRow> load_grade_table(std::istream& in) {
    static const std::vector<std::string> kHeader = {"sector", "grade", "ead", "lgd", "pd", "rho"};
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (line_no == 0 || trim(line).empty()) throw ParseError(0, "empty portfolio");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (split_csv_line(trim(line)) != kHeader) {
        throw ParseError(line_no, "expected header 'sector,grade,ead,lgd,pd,rho'");
    }

    std::vector<GradeRow> rows;
    std::set<std::pair<std::string, std::string>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != kHeader.size()) {
            throw ParseError(line_no, "expected 6 columns, found " + std::to_string(cells.size()));
        }
        if (cells[0].empty() || cells[1].empty()) throw ParseError(line_no, "sector and grade are required");
        if (!seen.emplace(cells[0], cells[1]).second) {
            throw ParseError(line_no, "duplicate row for (" + cells[0] + ", " + cells[1] + ")");
        }
        const bool blank = std::all_of(cells.begin() + 2, cells.end(), [](const auto& c) { return c.empty(); });
        if (blank) continue;

        GradeRow row;
        row.sector = cells[0];
        row.grade = cells[1];
        row.ead = parse_number(cells[2], line_no, "ead");
        row.lgd = parse_number(cells[3], line_no, "lgd");
        row.pd = parse_number(cells[4], line_no, "pd");
        row.rho = parse_number(cells[5], line_no, "rho");
        row.line = line_no;
        if (const char* msg = bound_violation(row.ead, row.lgd, row.pd, row.rho)) throw ParseError(line_no, msg);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(0, "empty portfolio");
    return rows;
}

std::vector<GradeRow> load_grade_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open portfolio file '" + path.string() + "'");
    return load_grade_table(in);
}

Portfolio expand_granular(std::span<const GradeRow> rows, double max_weight) {
    ASRF_REQUIRE(max_weight > 0.0 && max_weight <= 1.0, "max_weight must lie in (0, 1]");
    ASRF_REQUIRE(!rows.empty(), "empty portfolio");
    double total = 0.0;
    for (const auto& r : rows) total += r.ead;
    const double cap = max_weight * total;

    std::vector<Obligor> credits;
    for (const auto& r : rows) {
        auto m = static_cast<std::size_t>(std::ceil(r.ead / cap));
        m = std::max<std::size_t>(m, 1);
        // ceil() can overshoot by one when ead / cap is integral up to rounding.
        if (m > 1 && r.ead / static_cast<double>(m - 1) <= cap) --m;
        const double ead = r.ead / static_cast<double>(m);
        credits.insert(credits.end(), m, Obligor{ead, r.lgd, r.pd, r.rho, r.sector, r.grade});
    }
    return Portfolio(std::move(credits));
}

Portfolio build_homogeneous(std::size_t n, double ead, double lgd, double pd, double rho) {
    ASRF_REQUIRE(n >= 1, "homogeneous portfolio needs n >= 1");
    Obligor o{ead, lgd, pd, rho, "homogeneous", ""};
    validate_obligor(o);
    return Portfolio(std::vector<Obligor>(n, o));
}

SegmentAggregate aggregate(std::span<const GradeRow> rows, const std::optional<std::string>& sector) {
    SegmentAggregate agg;
    for (const auto& r : rows) {
        if (sector && r.sector != *sector) continue;
        agg.ead += r.ead;
        agg.lgd += r.ead * r.lgd;
        agg.pd += r.ead * r.pd;
        agg.rho += r.ead * r.rho;
    }
    ASRF_REQUIRE(agg.ead > 0.0, "no rows match the requested segment");
    agg.lgd /= agg.ead;
    agg.pd /= agg.ead;
    agg.rho /= agg.ead;
    return agg;
}

SegmentAggregate aggregate(const Portfolio& portfolio) {
    SegmentAggregate agg;
    agg.ead = portfolio.total_ead();
    const auto w = portfolio.weights();
    for (std::size_t i = 0; i < portfolio.size(); ++i) {
        agg.lgd += w[i] * portfolio[i].lgd;
        agg.pd += w[i] * portfolio[i].pd;
        agg.rho += w[i] * portfolio[i].rho;
    }
    return agg;
}

Portfolio scale_correlation(const Portfolio& portfolio, double multiplier) {
    ASRF_REQUIRE(multiplier > 0.0, "correlation multiplier must be positive");
    std::vector<Obligor> scaled(portfolio.obligors().begin(), portfolio.obligors().end());
    for (auto& o : scaled) {
        o.rho *= multiplier;
        ASRF_REQUIRE(inside_margin(o.rho), "scaled asset correlation leaves (0, 1)");
    }
    return Portfolio(std::move(scaled));
}

}  // namespace asrf
