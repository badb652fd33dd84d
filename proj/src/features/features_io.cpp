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

#include "nrvqa/features_io.h"

#include <array>
#include <string_view>

#include "../io/csv.h"
#include "nrvqa/error.h"

namespace nrvqa {

namespace {

constexpr std::array<std::string_view, 6> kFrameColumns = {"index",  "frame_type", "size_bytes",
                                                           "avg_qp", "skip_ratio", "avg_mv"};

std::string optional_cell(const std::optional<double>& v) { return v ? io::format_double(*v) : std::string(); }

}  // namespace

std::vector<FrameRecord> read_frame_stats_csv(std::istream& in) {
  const auto table = io::read_csv(in);
  io::require_header(table, kFrameColumns);
  std::vector<FrameRecord> frames;
  frames.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    FrameRecord f;
    f.index = io::parse_integer(row, 0, kFrameColumns[0]);
    const auto type = parse_frame_type(row.fields[1]);
    if (!type) throw SchemaError("unknown frame type '" + row.fields[1] + "'", row.line, "frame_type");
    f.frame_type = *type;
    const auto size = io::parse_integer(row, 2, kFrameColumns[2]);
    if (size < 0) throw SchemaError("size_bytes must be non-negative", row.line, "size_bytes");
    f.size_bytes = static_cast<std::uint64_t>(size);
    f.avg_qp = io::parse_double(row, 3, kFrameColumns[3]);
    f.skip_ratio = io::parse_optional_double(row, 4, kFrameColumns[4]);
    f.avg_mv = io::parse_optional_double(row, 5, kFrameColumns[5]);
    try {
      validate(f);
    } catch (const InvalidArgument& e) {
      throw SchemaError(e.what(), row.line);
    }
    if (!frames.empty() && f.index <= frames.back().index) {
      throw SchemaError("frame indices must be strictly increasing", row.line, "index");
    }
    frames.push_back(f);
  }
  return frames;
}

void write_frame_stats_csv(std::ostream& out, std::span<const FrameRecord> frames) {
  const std::vector<std::string> header(kFrameColumns.begin(), kFrameColumns.end());
  io::write_csv_row(out, header);
  for (const auto& f : frames) {
    const std::vector<std::string> row = {std::to_string(f.index),     std::string(to_string(f.frame_type)),
                                          std::to_string(f.size_bytes), io::format_double(f.avg_qp),
                                          optional_cell(f.skip_ratio),  optional_cell(f.avg_mv)};
    io::write_csv_row(out, row);
  }
}

nlohmann::json to_json(const StreamFeatures& f) {
  nlohmann::json scenes = nlohmann::json::array();
  for (const auto& s : f.scenes) {
    scenes.push_back({{"gop_count", s.gop_count}, {"avg_iframe_bytes", s.avg_iframe_bytes}, {"weight", s.weight}});
  }
  nlohmann::json j = {
      {"bitrate_kbps", f.bitrate_kbps},
      {"framerate_fps", f.framerate_fps},
      {"width_px", f.width_px},
      {"height_px", f.height_px},
      {"avg_bytes_per_iframe", f.avg_bytes_per_iframe},
      {"avg_qp", f.avg_qp},
      {"max_qp", f.max_qp},
      {"min_qp", f.min_qp},
      {"iflicker_count", f.iflicker_count},
      {"skip_ratio", f.skip_ratio},
      {"avg_mv", f.avg_mv},
      {"key_frame_rate", f.key_frame_rate},
      {"gop_distance", f.gop_distance},
      {"sad_per_pixel", f.sad_per_pixel},
      {"content_class", f.content_class ? nlohmann::json(*f.content_class) : nlohmann::json(nullptr)},
      {"scenes", scenes},
      {"quant", f.quant},
      {"imputed", f.imputed.names()},
  };
  return j;
}

StreamFeatures stream_features_from_json(const nlohmann::json& j) {
  StreamFeatures f;
  try {
    f.bitrate_kbps = j.at("bitrate_kbps").get<double>();
    f.framerate_fps = j.at("framerate_fps").get<double>();
    f.width_px = j.at("width_px").get<int>();
    f.height_px = j.at("height_px").get<int>();
    f.avg_bytes_per_iframe = j.at("avg_bytes_per_iframe").get<double>();
    f.avg_qp = j.at("avg_qp").get<double>();
    f.max_qp = j.at("max_qp").get<double>();
    f.min_qp = j.at("min_qp").get<double>();
    f.iflicker_count = j.at("iflicker_count").get<int>();
    f.skip_ratio = j.at("skip_ratio").get<double>();
    f.avg_mv = j.at("avg_mv").get<double>();
    f.key_frame_rate = j.at("key_frame_rate").get<double>();
    f.gop_distance = j.at("gop_distance").get<double>();
    f.sad_per_pixel = j.at("sad_per_pixel").get<double>();
    if (j.contains("content_class") && !j.at("content_class").is_null()) {
      f.content_class = j.at("content_class").get<int>();
    }
    for (const auto& s : j.at("scenes")) {
      f.scenes.push_back({s.at("gop_count").get<int>(), s.at("avg_iframe_bytes").get<double>(),
                          s.at("weight").get<double>()});
    }
    f.quant = j.at("quant").get<double>();
    for (const auto& name : j.value("imputed", nlohmann::json::array())) {
      const auto n = name.get<std::string>();
      if (n == "avg_bytes_per_iframe") f.imputed.avg_bytes_per_iframe = true;
      else if (n == "skip_ratio") f.imputed.skip_ratio = true;
      else if (n == "avg_mv") f.imputed.avg_mv = true;
      else if (n == "sad_per_pixel") f.imputed.sad = true;
      else if (n == "key_frame_rate") f.imputed.key_frame_rate = true;
      else if (n == "quant") f.imputed.quant = true;
      else if (n == "scenes") f.imputed.scenes = true;
      else throw SchemaError("unknown imputed field '" + n + "'", std::nullopt, "imputed");
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("stream features JSON: ") + e.what());
  }
  try {
    validate(f);
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("stream features JSON: ") + e.what());
  }
  return f;
}

}  // namespace nrvqa
