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

// Minimal RFC 4180 reader/writer used by every tabular schema. Lines starting
// with '#' are provenance comments and are skipped on read.

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nrvqa::io {

struct CsvRow {
  std::size_t line = 0;  // 1-based physical line
  std::vector<std::string> fields;
};

struct CsvTable {
  std::vector<std::string> header;
  std::size_t header_line = 0;
  std::vector<CsvRow> rows;
};

// Throws SchemaError on unterminated quotes or ragged rows.
CsvTable read_csv(std::istream& in);

// Throws SchemaError unless the table header starts with exactly `required`
// followed by any subset-prefix of `optional_tail`.
void require_header(const CsvTable& table, std::span<const std::string_view> required,
                    std::span<const std::string_view> optional_tail = {});

std::string escape_csv(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// Shortest round-trip decimal representation.
std::string format_double(double value);

// Cell parsers; `column` names the field for the error message. Empty cells
// are only accepted by the optional variants.
double parse_double(const CsvRow& row, std::size_t col, std::string_view column);
std::optional<double> parse_optional_double(const CsvRow& row, std::size_t col, std::string_view column);
long long parse_integer(const CsvRow& row, std::size_t col, std::string_view column);
std::optional<long long> parse_optional_integer(const CsvRow& row, std::size_t col, std::string_view column);

}  // namespace nrvqa::io
