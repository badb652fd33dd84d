// Copyright 2026 The nrvqa Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace nrvqa {

// Base for every error the library raises. `kind()` is a stable
// machine-readable tag used by the CLI error record.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
  virtual const char* kind() const noexcept { return "error"; }
};

// A caller broke an operation's precondition (empty input, wrong NAL type,
// arity mismatch, out-of-range argument).
class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

// A model formula left its mathematical domain (log of a non-positive value,
// division by zero, non-finite intermediate).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

class MalformedStream : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "malformed_stream"; }
};

class UnsupportedFeature : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported_feature"; }
};

class UnknownModel : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unknown_model"; }
};

// Input file violates its declared schema. Row and column are 1-based and
// refer to the physical line and the CSV field (or JSON key) at fault.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& message, std::optional<std::size_t> row = std::nullopt,
              std::optional<std::string> column = std::nullopt)
      : Error(format(message, row, column)), message_(message), row_(row), column_(std::move(column)) {}

  const char* kind() const noexcept override { return "schema_error"; }
  const std::optional<std::size_t>& row() const noexcept { return row_; }
  const std::optional<std::string>& column() const noexcept { return column_; }
  // Message without the row/column suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(const std::string& message, const std::optional<std::size_t>& row,
                            const std::optional<std::string>& column) {
    std::string out = message;
    if (row) out += " (row " + std::to_string(*row);
    if (column) out += std::string(row ? ", " : " (") + "column '" + *column + "'";
    if (row || column) out += ")";
    return out;
  }

  std::string message_;
  std::optional<std::size_t> row_;
  std::optional<std::string> column_;
};

}  // namespace nrvqa
