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

#include "csv.h"

#include <charconv>
#include <cmath>
#include <system_error>

#include "nrvqa/error.h"

namespace nrvqa::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && trim(current).empty()) {
      current.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw SchemaError("unterminated quoted field", line_no);
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

const std::string& cell(const CsvRow& row, std::size_t col, std::string_view column) {
  if (col >= row.fields.size()) throw SchemaError("missing field", row.line, std::string(column));
  return row.fields[col];
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    auto fields = split_line(line, line_no);
    if (!have_header) {
      table.header = std::move(fields);
      table.header_line = line_no;
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw SchemaError("expected " + std::to_string(table.header.size()) + " fields, found " +
                            std::to_string(fields.size()),
                        line_no);
    }
    table.rows.push_back({line_no, std::move(fields)});
  }
  if (!have_header) throw SchemaError("missing CSV header");
  return table;
}

void require_header(const CsvTable& table, std::span<const std::string_view> required,
                    std::span<const std::string_view> optional_tail) {
  const auto& h = table.header;
  if (h.size() < required.size() || h.size() > required.size() + optional_tail.size()) {
    throw SchemaError("unexpected number of header columns", table.header_line);
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    const std::string_view want = i < required.size() ? required[i] : optional_tail[i - required.size()];
    if (h[i] != want) {
      throw SchemaError("expected header column '" + std::string(want) + "'", table.header_line, h[i]);
    }
  }
}

std::string escape_csv(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos && field == trim(field)) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape_csv(fields[i]);
  }
  out << '\n';
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double parse_double(const CsvRow& row, std::size_t col, std::string_view column) {
  const auto value = parse_optional_double(row, col, column);
  if (!value) throw SchemaError("required value is empty", row.line, std::string(column));
  return *value;
}

std::optional<double> parse_optional_double(const CsvRow& row, std::size_t col, std::string_view column) {
  const std::string& text = cell(row, col, column);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw SchemaError("not a finite number: '" + text + "'", row.line, std::string(column));
  }
  return value;
}

long long parse_integer(const CsvRow& row, std::size_t col, std::string_view column) {
  const auto value = parse_optional_integer(row, col, column);
  if (!value) throw SchemaError("required value is empty", row.line, std::string(column));
  return *value;
}

std::optional<long long> parse_optional_integer(const CsvRow& row, std::size_t col, std::string_view column) {
  const std::string& text = cell(row, col, column);
  if (text.empty()) return std::nullopt;
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw SchemaError("not an integer: '" + text + "'", row.line, std::string(column));
  }
  return value;
}

}  // namespace nrvqa::io
