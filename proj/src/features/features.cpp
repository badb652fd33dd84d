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

#include "nrvqa/features.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nrvqa/error.h"

namespace nrvqa {

namespace {

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw InvalidArgument(std::string(what) + " must be finite");
}

std::vector<std::size_t> iframe_positions(std::span<const FrameRecord> frames) {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].frame_type == FrameType::I) positions.push_back(i);
  }
  return positions;
}

}  // namespace

std::string_view to_string(FrameType type) {
  switch (type) {
    case FrameType::I: return "I";
    case FrameType::P: return "P";
    case FrameType::B: return "B";
    case FrameType::unknown: return "unknown";
  }
  return "unknown";
}

std::optional<FrameType> parse_frame_type(std::string_view text) {
  if (text == "I") return FrameType::I;
  if (text == "P") return FrameType::P;
  if (text == "B") return FrameType::B;
  if (text == "unknown") return FrameType::unknown;
  return std::nullopt;
}

std::string_view to_string(DeviceType type) { return type == DeviceType::handheld ? "handheld" : "tv"; }

std::optional<DeviceType> parse_device_type(std::string_view text) {
  if (text == "tv" || text == "TV") return DeviceType::tv;
  if (text == "handheld") return DeviceType::handheld;
  return std::nullopt;
}

std::vector<std::string> ImputedFields::names() const {
  std::vector<std::string> out;
  if (avg_bytes_per_iframe) out.emplace_back("avg_bytes_per_iframe");
  if (skip_ratio) out.emplace_back("skip_ratio");
  if (avg_mv) out.emplace_back("avg_mv");
  if (sad) out.emplace_back("sad_per_pixel");
  if (key_frame_rate) out.emplace_back("key_frame_rate");
  if (quant) out.emplace_back("quant");
  if (scenes) out.emplace_back("scenes");
  return out;
}

void validate(const FrameRecord& frame) {
  require_finite(frame.avg_qp, "avg_qp");
  if (frame.avg_qp < 0.0 || frame.avg_qp > 51.0) throw InvalidArgument("avg_qp must lie in [0, 51]");
  if (frame.skip_ratio) {
    require_finite(*frame.skip_ratio, "skip_ratio");
    if (*frame.skip_ratio < 0.0 || *frame.skip_ratio > 1.0) throw InvalidArgument("skip_ratio must lie in [0, 1]");
  }
  if (frame.avg_mv) {
    require_finite(*frame.avg_mv, "avg_mv");
    if (*frame.avg_mv < 0.0) throw InvalidArgument("avg_mv must be non-negative");
  }
}

void validate(const StreamFeatures& f) {
  for (double v : {f.bitrate_kbps, f.framerate_fps, f.avg_bytes_per_iframe, f.avg_qp, f.max_qp, f.min_qp,
                   f.skip_ratio, f.avg_mv, f.key_frame_rate, f.gop_distance, f.sad_per_pixel, f.quant}) {
    require_finite(v, "stream feature");
  }
  if (f.bitrate_kbps <= 0.0) throw InvalidArgument("bitrate_kbps must be positive");
  if (f.framerate_fps <= 0.0) throw InvalidArgument("framerate_fps must be positive");
  if (f.width_px <= 0 || f.height_px <= 0) throw InvalidArgument("resolution must be positive");
  if (f.avg_bytes_per_iframe < 0.0) throw InvalidArgument("avg_bytes_per_iframe must be non-negative");
  if (f.min_qp < 0.0 || f.max_qp > 51.0 || f.min_qp > f.avg_qp || f.avg_qp > f.max_qp) {
    throw InvalidArgument("QP statistics must satisfy 0 <= min_qp <= avg_qp <= max_qp <= 51");
  }
  if (f.iflicker_count < 0) throw InvalidArgument("iflicker_count must be non-negative");
  if (f.skip_ratio < 0.0 || f.skip_ratio > 1.0) throw InvalidArgument("skip_ratio must lie in [0, 1]");
  if (f.avg_mv < 0.0) throw InvalidArgument("avg_mv must be non-negative");
  if (f.sad_per_pixel < 0.0) throw InvalidArgument("sad_per_pixel must be non-negative");
  if (f.key_frame_rate <= 0.0 || f.gop_distance <= 0.0) {
    throw InvalidArgument("key_frame_rate and gop_distance must be positive");
  }
  const double expected_kfr = f.framerate_fps / f.gop_distance;
  if (std::fabs(f.key_frame_rate - expected_kfr) > 1e-9 * std::max(1.0, expected_kfr)) {
    throw InvalidArgument("key_frame_rate must equal framerate_fps / gop_distance");
  }
  if (f.quant < 0.0 || f.quant > 1.0) throw InvalidArgument("quant must lie in [0, 1]");
  if (f.content_class && (*f.content_class < 0 || *f.content_class > 4)) {
    throw InvalidArgument("content_class must lie in 0..4");
  }
  int heavy = 0;
  for (const auto& scene : f.scenes) {
    if (scene.gop_count <= 0 || !(scene.avg_iframe_bytes >= 0.0) || !std::isfinite(scene.avg_iframe_bytes)) {
      throw InvalidArgument("scene statistics must have positive GOP count and finite I-frame size");
    }
    if (scene.weight == kLowestSceneWeight) ++heavy;
    else if (scene.weight != 1.0) throw InvalidArgument("scene weight must be 16 or 1");
  }
  if (!f.scenes.empty() && heavy != 1) throw InvalidArgument("exactly one scene must carry weight 16");
}

void validate(const DisplayParams& d) {
  require_finite(d.screen_size_inches, "screen_size_inches");
  if (d.screen_size_inches < 0.0) throw InvalidArgument("screen_size_inches must be non-negative");
  if (d.display_width_px <= 0 || d.display_height_px <= 0) throw InvalidArgument("display resolution must be positive");
}

int detect_iflicker(std::span<const double> qp, double threshold) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < qp.size(); ++i) {
    if (std::fabs(qp[i] - qp[i - 1]) > threshold && std::fabs(qp[i] - qp[i + 1]) > threshold) ++count;
  }
  return count;
}

std::vector<SceneStats> segment_scenes(std::span<const FrameRecord> frames,
                                       std::optional<std::span<const std::int64_t>> gop_boundaries,
                                       double relative_threshold) {
  std::vector<double> gop_iframe_bytes;
  for (const auto pos : iframe_positions(frames)) {
    gop_iframe_bytes.push_back(static_cast<double>(frames[pos].size_bytes));
  }
  if (gop_iframe_bytes.empty()) throw InvalidArgument("segment_scenes: no I frame in the sequence");
  const auto gop_count = static_cast<std::int64_t>(gop_iframe_bytes.size());

  // Scene start ordinals, always beginning with GOP 0.
  std::vector<std::int64_t> starts{0};
  if (gop_boundaries) {
    for (const auto b : *gop_boundaries) {
      if (b <= 0 || b >= gop_count) {
        throw InvalidArgument("segment_scenes: boundary " + std::to_string(b) + " outside (0, " +
                              std::to_string(gop_count) + ")");
      }
      if (b <= starts.back()) throw InvalidArgument("segment_scenes: boundaries must be strictly increasing");
      starts.push_back(b);
    }
  } else {
    double running_sum = gop_iframe_bytes[0];
    double running_count = 1.0;
    for (std::int64_t g = 1; g < gop_count; ++g) {
      const double mean = running_sum / running_count;
      const double size = gop_iframe_bytes[static_cast<std::size_t>(g)];
      if (std::fabs(size - mean) > relative_threshold * mean) {
        starts.push_back(g);
        running_sum = 0.0;
        running_count = 0.0;
      }
      running_sum += size;
      running_count += 1.0;
    }
  }

  std::vector<SceneStats> scenes;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const auto begin = static_cast<std::size_t>(starts[s]);
    const auto end = s + 1 < starts.size() ? static_cast<std::size_t>(starts[s + 1]) : gop_iframe_bytes.size();
    const double total = std::accumulate(gop_iframe_bytes.begin() + static_cast<std::ptrdiff_t>(begin),
                                         gop_iframe_bytes.begin() + static_cast<std::ptrdiff_t>(end), 0.0);
    scenes.push_back({static_cast<int>(end - begin), total / static_cast<double>(end - begin), 1.0});
  }
  const auto lowest = std::min_element(scenes.begin(), scenes.end(), [](const SceneStats& a, const SceneStats& b) {
    return a.avg_iframe_bytes < b.avg_iframe_bytes;
  });
  lowest->weight = kLowestSceneWeight;
  return scenes;
}

double quant_proxy(std::span<const FrameRecord> frames) {
  if (frames.empty()) throw InvalidArgument("quant_proxy: empty frame list");
  double non_intra_sum = 0.0;
  std::size_t non_intra = 0;
  double all_sum = 0.0;
  for (const auto& f : frames) {
    all_sum += f.avg_qp;
    if (f.frame_type != FrameType::I) {
      non_intra_sum += f.avg_qp;
      ++non_intra;
    }
  }
  const double mean =
      non_intra > 0 ? non_intra_sum / static_cast<double>(non_intra) : all_sum / static_cast<double>(frames.size());
  return mean / 51.0;
}

StreamFeatures aggregate_features(std::span<const FrameRecord> frames, double framerate_fps, double bitrate_kbps,
                                  int width_px, int height_px) {
  if (frames.empty()) throw InvalidArgument("aggregate_features: empty frame list");
  require_finite(framerate_fps, "framerate_fps");
  require_finite(bitrate_kbps, "bitrate_kbps");
  if (framerate_fps <= 0.0 || bitrate_kbps <= 0.0) {
    throw InvalidArgument("aggregate_features: framerate and bitrate must be positive");
  }
  if (width_px <= 0 || height_px <= 0) throw InvalidArgument("aggregate_features: resolution must be positive");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    validate(frames[i]);
    if (i > 0 && frames[i].index <= frames[i - 1].index) {
      throw InvalidArgument("aggregate_features: frame indices must be strictly increasing");
    }
  }
  const auto intra = iframe_positions(frames);
  if (intra.empty()) throw InvalidArgument("aggregate_features: no I frame, AvgByteI undefined");

  StreamFeatures f;
  f.bitrate_kbps = bitrate_kbps;
  f.framerate_fps = framerate_fps;
  f.width_px = width_px;
  f.height_px = height_px;

  double intra_bytes = 0.0;
  for (const auto pos : intra) intra_bytes += static_cast<double>(frames[pos].size_bytes);
  f.avg_bytes_per_iframe = intra_bytes / static_cast<double>(intra.size());

  std::vector<double> qp;
  qp.reserve(frames.size());
  for (const auto& frame : frames) qp.push_back(frame.avg_qp);
  f.avg_qp = std::accumulate(qp.begin(), qp.end(), 0.0) / static_cast<double>(qp.size());
  const auto [lo, hi] = std::minmax_element(qp.begin(), qp.end());
  f.min_qp = *lo;
  f.max_qp = *hi;
  // The mean of finitely many values can drift one ulp outside their range.
  f.avg_qp = std::clamp(f.avg_qp, f.min_qp, f.max_qp);
  f.iflicker_count = detect_iflicker(qp);

  double skip_sum = 0.0;
  double mv_sum = 0.0;
  std::size_t skip_n = 0;
  std::size_t mv_n = 0;
  for (const auto& frame : frames) {
    if (frame.skip_ratio) {
      skip_sum += *frame.skip_ratio;
      ++skip_n;
    }
    if (frame.avg_mv) {
      mv_sum += *frame.avg_mv;
      ++mv_n;
    }
  }
  f.skip_ratio = skip_n > 0 ? skip_sum / static_cast<double>(skip_n) : 0.0;
  f.imputed.skip_ratio = skip_n == 0;
  f.avg_mv = mv_n > 0 ? mv_sum / static_cast<double>(mv_n) : 0.0;
  f.imputed.avg_mv = mv_n == 0;
  f.sad_per_pixel = 0.0;
  f.imputed.sad = true;

  // A lone I frame makes the whole sequence one GOP.
  if (intra.size() >= 2) {
    f.gop_distance = static_cast<double>(frames[intra.back()].index - frames[intra.front()].index) /
                     static_cast<double>(intra.size() - 1);
  } else {
    f.gop_distance = static_cast<double>(frames.size());
  }
  f.key_frame_rate = framerate_fps / f.gop_distance;

  f.scenes = segment_scenes(frames);
  f.quant = quant_proxy(frames);
  return f;
}

}  // namespace nrvqa
