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

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace asrf {

/// Distance every PD and asset correlation must keep from {0, 1}.
inline constexpr double kProbabilityMargin = 1e-6;

/// One credit. EAD is in abstract currency units; everything downstream is
/// expressed as a fraction of total portfolio EAD.
struct Obligor {
    double ead = 0.0;
    double lgd = 0.0;
    double pd = 0.0;
    /// Asset correlation; the factor loading is sqrt(rho).
    double rho = 0.0;
    std::string sector;
    std::string grade;

    double loading() const { return std::sqrt(rho); }
};

/// Throws DomainError naming the violated bound.
void validate_obligor(const Obligor& o);

/// Immutable ordered collection of obligors with exposure weights
/// w_i = ead_i / sum_j ead_j.
class Portfolio {
public:
    explicit Portfolio(std::vector<Obligor> obligors);

    std::span<const Obligor> obligors() const noexcept { return obligors_; }
    std::span<const double> weights() const noexcept { return weights_; }
    const Obligor& operator[](std::size_t i) const { return obligors_[i]; }
    std::size_t size() const noexcept { return obligors_.size(); }
    double total_ead() const noexcept { return total_ead_; }
    double max_weight() const;

private:
    std::vector<Obligor> obligors_;
    std::vector<double> weights_;
    double total_ead_ = 0.0;
};

/// One (sector, grade) line of a grade table.
struct GradeRow {
    std::string sector;
    std::string grade;
    double ead = 0.0;
    double lgd = 0.0;
    double pd = 0.0;
    double rho = 0.0;
    std::size_t line = 0;
};

/// Parses `sector,grade,ead,lgd,pd,rho` CSV (header required, pd and rho as
/// decimal fractions). Rows whose numeric cells are all blank are skipped.
/// Throws ParseError on malformed numbers, bound violations, duplicate
/// (sector, grade) pairs, or when no data rows remain.
std::vector<GradeRow> load_grade_table(std::istream& in);
std::vector<GradeRow> load_grade_table(const std::filesystem::path& path);

/// Splits each row into m = ceil(ead / (max_weight * total)) equal credits so
/// that no credit exceeds max_weight of total EAD.
Portfolio expand_granular(std::span<const GradeRow> rows, double max_weight);

/// n identical obligors of the given parameters.
Portfolio build_homogeneous(std::size_t n, double ead, double lgd, double pd, double rho);

/// Exposure-weighted averages of a set of rows.
struct SegmentAggregate {
    double ead = 0.0;
    double lgd = 0.0;
    double pd = 0.0;
    double rho = 0.0;
};

/// Aggregates every row, or only rows of `sector` when given.
SegmentAggregate aggregate(std::span<const GradeRow> rows, const std::optional<std::string>& sector = std::nullopt);
SegmentAggregate aggregate(const Portfolio& portfolio);

/// Copy of `portfolio` with every asset correlation multiplied by `multiplier`.
/// Throws DomainError if any result leaves (0, 1).
Portfolio scale_correlation(const Portfolio& portfolio, double multiplier);

}  // namespace asrf
