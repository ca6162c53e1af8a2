// Copyright 2026 The qcollide Authors
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
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace qcollide {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad index, shape mismatch,
/// non-Hermitian input to a Hermitian routine).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

class DimensionLimitError : public Error {
  public:
    using Error::Error;
};

/// A physical parameter lies outside its allowed domain.
class ConfigError : public Error {
  public:
    ConfigError(std::string parameter, std::string message)
        : Error(std::move(message)), parameter_(std::move(parameter)) {}

    static ConfigError out_of_range(const std::string& parameter, double value,
                                    const std::string& allowed) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        return ConfigError(parameter, parameter + " = " + buf + " is out of range; allowed range is " + allowed);
    }

    const std::string& parameter() const noexcept { return parameter_; }

  private:
    std::string parameter_;
};

/// Malformed configuration text. Line and column are 1-based; zero if unknown.
class ParseError : public Error {
  public:
    ParseError(std::string message, std::size_t line, std::size_t column)
        : Error(std::move(message)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// A state left the set of density matrices during a protocol phase.
class NumericalIntegrityError : public Error {
  public:
    NumericalIntegrityError(std::string phase, const std::string& detail)
        : Error("numerical integrity violated after phase '" + phase + "': " + detail),
          phase_(std::move(phase)) {}

    const std::string& phase() const noexcept { return phase_; }

  private:
    std::string phase_;
};

}  // namespace qcollide
