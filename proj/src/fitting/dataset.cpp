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

#include "nrvqa/dataset.h"

#include <array>
#include <fstream>
#include <set>
#include <string_view>

#include "io/csv.h"
#include "nrvqa/error.h"

namespace nrvqa {

namespace {

enum Column : std::size_t {
  kSequenceId,
  kSourceId,
  kMos,
  kCi95,
  kBitrate,
  kFramerate,
  kWidth,
  kHeight,
  kAvgByteI,
  kAvgQp,
  kMaxQp,
  kMinQp,
  kIflicker,
  kSkipRatio,
  kAvgMv,
  kKfr,
  kSad,
  kContentClass,
  kScreenInches,
  kDisplayWidth,
  kDisplayHeight,
  kDeviceType,
  kQuant,
};

constexpr std::array<std::string_view, 22> kColumns = {
    "sequence_id", "source_id",   "mos",     "ci95",          "bitrate_kbps",  "framerate_fps",
    "width",       "height",      "avg_bytes_per_iframe",     "avg_qp",        "max_qp",
    "min_qp",      "iflicker",    "skip_ratio",               "avg_mv",        "kfr",
    "sad",         "content_class", "screen_inches",          "display_width", "display_height",
    "device_type"};
constexpr std::array<std::string_view, 1> kOptionalColumns = {"quant"};

std::string_view column_name(std::size_t col) {
  return col < kColumns.size() ? kColumns[col] : kOptionalColumns[col - kColumns.size()];
}

double cell(const io::CsvRow& row, std::size_t col) { return io::parse_double(row, col, column_name(col)); }
std::optional<double> optional_cell(const io::CsvRow& row, std::size_t col) {
  return io::parse_optional_double(row, col, column_name(col));
}

int int_cell(const io::CsvRow& row, std::size_t col, long long lo, long long hi) {
  const long long v = io::parse_integer(row, col, column_name(col));
  if (v < lo || v > hi) throw SchemaError("value out of range", row.line, std::string(column_name(col)));
  return static_cast<int>(v);
}

std::optional<int> optional_int_cell(const io::CsvRow& row, std::size_t col, long long lo, long long hi) {
  const auto v = io::parse_optional_integer(row, col, column_name(col));
  if (!v) return std::nullopt;
  if (*v < lo || *v > hi) throw SchemaError("value out of range", row.line, std::string(column_name(col)));
  return static_cast<int>(*v);
}

DatasetRow parse_row(const io::CsvRow& row, bool has_quant) {
  DatasetRow r;
  auto& s = r.subjective;
  s.sequence_id = row.fields[kSequenceId];
  if (s.sequence_id.empty()) throw SchemaError("sequence_id is required", row.line, "sequence_id");
  s.source_id = row.fields[kSourceId].empty() ? s.sequence_id : row.fields[kSourceId];
  s.mos = cell(row, kMos);
  if (!(s.mos >= 1.0 && s.mos <= 5.0)) throw SchemaError("mos must lie in [1, 5]", row.line, "mos");
  s.ci95_halfwidth = optional_cell(row, kCi95);
  if (s.ci95_halfwidth && !(*s.ci95_halfwidth >= 0.0)) {
    throw SchemaError("ci95 must be non-negative", row.line, "ci95");
  }

  auto& f = r.features;
  f.bitrate_kbps = cell(row, kBitrate);
  f.framerate_fps = cell(row, kFramerate);
  f.width_px = int_cell(row, kWidth, 1, 1 << 16);
  f.height_px = int_cell(row, kHeight, 1, 1 << 16);
  if (const auto v = optional_cell(row, kAvgByteI)) {
    f.avg_bytes_per_iframe = *v;
  } else {
    f.imputed.avg_bytes_per_iframe = true;
  }
  f.avg_qp = cell(row, kAvgQp);
  f.max_qp = optional_cell(row, kMaxQp).value_or(f.avg_qp);
  f.min_qp = optional_cell(row, kMinQp).value_or(f.avg_qp);
  f.iflicker_count = optional_int_cell(row, kIflicker, 0, 1 << 30).value_or(0);
  if (const auto v = optional_cell(row, kSkipRatio)) f.skip_ratio = *v;
  else f.imputed.skip_ratio = true;
  if (const auto v = optional_cell(row, kAvgMv)) f.avg_mv = *v;
  else f.imputed.avg_mv = true;
  if (!(f.framerate_fps > 0.0)) throw SchemaError("framerate_fps must be positive", row.line, "framerate_fps");
  if (const auto v = optional_cell(row, kKfr)) {
    if (!(*v > 0.0)) throw SchemaError("kfr must be positive", row.line, "kfr");
    f.key_frame_rate = *v;
    f.gop_distance = f.framerate_fps / *v;
  } else {
    // One intra picture per second.
    f.key_frame_rate = 1.0;
    f.gop_distance = f.framerate_fps;
    f.imputed.key_frame_rate = true;
  }
  if (const auto v = optional_cell(row, kSad)) f.sad_per_pixel = *v;
  else f.imputed.sad = true;
  f.content_class = optional_int_cell(row, kContentClass, 0, 4);
  f.scenes = {SceneStats{1, f.avg_bytes_per_iframe, kLowestSceneWeight}};
  f.imputed.scenes = true;
  const auto quant = has_quant ? optional_cell(row, kQuant) : std::nullopt;
  if (quant) {
    f.quant = *quant;
  } else {
    f.quant = f.avg_qp / 51.0;
    f.imputed.quant = true;
  }

  auto& d = r.display;
  d.screen_size_inches = optional_cell(row, kScreenInches).value_or(0.0);
  d.display_width_px = optional_int_cell(row, kDisplayWidth, 1, 1 << 16).value_or(f.width_px);
  d.display_height_px = optional_int_cell(row, kDisplayHeight, 1, 1 << 16).value_or(f.height_px);
  if (!row.fields[kDeviceType].empty()) {
    const auto type = parse_device_type(row.fields[kDeviceType]);
    if (!type) throw SchemaError("device_type must be 'tv' or 'handheld'", row.line, "device_type");
    d.device_type = *type;
  }

  try {
    validate(f);
    validate(d);
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what(), row.line);
  }
  return r;
}

std::string optional_text(bool present, double v) { return present ? io::format_double(v) : std::string(); }

}  // namespace

void Dataset::validate() const {
  std::set<std::string, std::less<>> ids;
  for (const auto& r : rows) {
    if (!ids.insert(r.sequence_id()).second) {
      throw InvalidArgument("duplicate sequence_id '" + r.sequence_id() + "'");
    }
    if (!(r.subjective.mos >= 1.0 && r.subjective.mos <= 5.0)) {
      throw InvalidArgument("mos of '" + r.sequence_id() + "' outside [1, 5]");
    }
  }
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
  Dataset out;
  out.rows.reserve(indices.size());
  for (const auto i : indices) out.rows.push_back(rows.at(i));
  return out;
}

Dataset read_dataset_csv(std::istream& in) {
  const auto table = io::read_csv(in);
  io::require_header(table, kColumns, kOptionalColumns);
  const bool has_quant = table.header.size() > kColumns.size();
  Dataset dataset;
  std::set<std::string, std::less<>> ids;
  for (const auto& row : table.rows) {
    dataset.rows.push_back(parse_row(row, has_quant));
    if (!ids.insert(dataset.rows.back().sequence_id()).second) {
      throw SchemaError("duplicate sequence_id", row.line, "sequence_id");
    }
  }
  return dataset;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open dataset " + path.string());
  try {
    return read_dataset_csv(in);
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.message(), e.row(), e.column());
  }
}

void write_dataset_csv(std::ostream& out, const Dataset& dataset) {
  std::vector<std::string> header(kColumns.begin(), kColumns.end());
  header.emplace_back(kOptionalColumns[0]);
  io::write_csv_row(out, header);
  for (const auto& r : dataset.rows) {
    const auto& f = r.features;
    const auto& d = r.display;
    const auto& s = r.subjective;
    const std::vector<std::string> cells = {
        s.sequence_id,
        s.source_id,
        io::format_double(s.mos),
        s.ci95_halfwidth ? io::format_double(*s.ci95_halfwidth) : std::string(),
        io::format_double(f.bitrate_kbps),
        io::format_double(f.framerate_fps),
        std::to_string(f.width_px),
        std::to_string(f.height_px),
        optional_text(!f.imputed.avg_bytes_per_iframe, f.avg_bytes_per_iframe),
        io::format_double(f.avg_qp),
        io::format_double(f.max_qp),
        io::format_double(f.min_qp),
        std::to_string(f.iflicker_count),
        optional_text(!f.imputed.skip_ratio, f.skip_ratio),
        optional_text(!f.imputed.avg_mv, f.avg_mv),
        optional_text(!f.imputed.key_frame_rate, f.key_frame_rate),
        optional_text(!f.imputed.sad, f.sad_per_pixel),
        f.content_class ? std::to_string(*f.content_class) : std::string(),
        d.screen_size_inches > 0.0 ? io::format_double(d.screen_size_inches) : std::string(),
        std::to_string(d.display_width_px),
        std::to_string(d.display_height_px),
        std::string(to_string(d.device_type)),
        optional_text(!f.imputed.quant, f.quant),
    };
    io::write_csv_row(out, cells);
  }
}

}  // namespace nrvqa
