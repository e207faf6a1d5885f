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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asrf {

/// A parameter lies outside the domain of the operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or out-of-bounds input data. Carries the 1-based source line
/// (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A simulation could not obtain the memory or threads it needs. No partial
/// result is ever returned alongside this error.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ASRF_REQUIRE(cond, msg)                                                \
    do {                                                                       \
        if (!(cond)) throw ::asrf::DomainError(msg);                           \
    } while (false)

}  // namespace asrf
