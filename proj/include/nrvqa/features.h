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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nrvqa {

enum class FrameType { I, P, B, unknown };

std::string_view to_string(FrameType type);
// Accepts "I", "P", "B" and "unknown" (case-sensitive); nullopt otherwise.
std::optional<FrameType> parse_frame_type(std::string_view text);

// Per-picture statistics in decode order.
struct FrameRecord {
  std::int64_t index = 0;
  FrameType frame_type = FrameType::unknown;
  std::uint64_t size_bytes = 0;
  // Mean macroblock QP of the picture, or mean slice QP when the stream was
  // parsed without entropy decoding.
  double avg_qp = 0.0;
  std::optional<double> skip_ratio;
  // Mean of |mv_x| + |mv_y| over the picture's macroblocks.
  std::optional<double> avg_mv;
};

// One detected (or declared) scene of consecutive GOPs.
struct SceneStats {
  int gop_count = 0;
  double avg_iframe_bytes = 0.0;
  double weight = 1.0;  // 16 for the scene with the smallest avg_iframe_bytes
};

// Fields that carry a default because the source did not provide them.
struct ImputedFields {
  bool avg_bytes_per_iframe = false;
  bool skip_ratio = false;
  bool avg_mv = false;
  bool sad = false;
  bool key_frame_rate = false;
  bool quant = false;
  bool scenes = false;

  std::vector<std::string> names() const;
};

// Sequence-level aggregate consumed by every quality model.
struct StreamFeatures {
  double bitrate_kbps = 0.0;
  double framerate_fps = 0.0;
  int width_px = 0;
  int height_px = 0;
  double avg_bytes_per_iframe = 0.0;
  double avg_qp = 0.0;
  double max_qp = 0.0;
  double min_qp = 0.0;
  int iflicker_count = 0;
  double skip_ratio = 0.0;
  double avg_mv = 0.0;
  double key_frame_rate = 0.0;
  double gop_distance = 0.0;
  double sad_per_pixel = 0.0;
  std::optional<int> content_class;
  std::vector<SceneStats> scenes;
  double quant = 0.0;
  ImputedFields imputed;

  double pixels_per_frame() const { return static_cast<double>(width_px) * static_cast<double>(height_px); }
};

enum class DeviceType { tv, handheld };

std::string_view to_string(DeviceType type);
std::optional<DeviceType> parse_device_type(std::string_view text);

struct DisplayParams {
  double screen_size_inches = 0.0;  // 0 when unknown
  int display_width_px = 0;
  int display_height_px = 0;
  DeviceType device_type = DeviceType::tv;

  double display_pixels() const {
    return static_cast<double>(display_width_px) * static_cast<double>(display_height_px);
  }
};

struct SubjectiveRecord {
  std::string sequence_id;
  std::string source_id;
  double mos = 0.0;
  std::optional<double> ci95_halfwidth;
};

inline constexpr double kIflickerThreshold = 5.0;
inline constexpr double kSceneChangeThreshold = 0.2;
inline constexpr double kLowestSceneWeight = 16.0;

// Counts interior pictures whose QP differs from both neighbours by strictly
// more than `threshold`.
int detect_iflicker(std::span<const double> per_picture_avg_qp, double threshold = kIflickerThreshold);

// Groups GOPs (runs starting at an I frame) into scenes. `gop_boundaries`
// holds the GOP ordinals at which a new scene starts; when absent, a new scene
// starts at any GOP whose I-frame size deviates from the running scene mean by
// more than `relative_threshold` of that mean.
std::vector<SceneStats> segment_scenes(std::span<const FrameRecord> frames,
                                       std::optional<std::span<const std::int64_t>> gop_boundaries = std::nullopt,
                                       double relative_threshold = kSceneChangeThreshold);

// Proxy for the P.1203.1 Annex D quantisation measure: mean per-picture QP
// over non-I frames (all frames when there are none) divided by 51.
double quant_proxy(std::span<const FrameRecord> frames);

StreamFeatures aggregate_features(std::span<const FrameRecord> frames, double framerate_fps, double bitrate_kbps,
                                  int width_px, int height_px);

// Throws InvalidArgument when a field is non-finite or outside its range.
void validate(const FrameRecord& frame);
void validate(const StreamFeatures& features);
void validate(const DisplayParams& display);

}  // namespace nrvqa
