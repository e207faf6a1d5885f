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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "asrf/asrf_engine.hpp"
#include "asrf/experiments.hpp"

namespace asrf {

/// `series,alpha,value` with value as a fraction of EAD to 8 decimals.
void write_curves_csv(std::ostream& out, std::span<const CurvePoint> curves);

/// `x1,x2` pairs with 10 decimals.
void write_scatter_csv(std::ostream& out, std::span<const std::pair<double, double>> pairs);

nlohmann::ordered_json to_json(const CapitalReport& report);
nlohmann::ordered_json to_json(const ComparisonRecord& record);
nlohmann::ordered_json to_json(std::span<const CurvePoint> curves);

/// 64-bit FNV-1a digest as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);
/// Digest of a file's bytes; throws ParseError if it cannot be read.
std::string file_digest(const std::filesystem::path& path);

}  // namespace asrf
