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

#include <algorithm>

#include "nrvqa/bitstream.h"
#include "nrvqa/error.h"

namespace nrvqa::h264 {

namespace {

struct OpenAccessUnit {
  std::uint64_t bytes = 0;
  std::uint32_t frame_num = 0;
  double qp_sum = 0.0;
  int slices = 0;
  bool any_b = false;
  bool any_p = false;
  bool any_unknown = false;
};

FrameType access_unit_type(const OpenAccessUnit& au) {
  if (au.any_unknown) return FrameType::unknown;
  if (au.any_b) return FrameType::B;
  if (au.any_p) return FrameType::P;
  return FrameType::I;
}

}  // namespace

ExtractResult extract_frames(std::span<const std::uint8_t> bytes) {
  const auto nals = split_annexb(bytes);

  ExtractResult result;
  result.total_bytes = bytes.size();
  std::map<int, SpsInfo> sps_table;
  std::map<int, PpsInfo> pps_table;
  std::optional<SpsInfo> active_sps;
  std::optional<OpenAccessUnit> current;
  std::uint64_t pending_bytes = 0;  // non-VCL NALs waiting for the next picture

  auto close_current = [&]() {
    if (!current) return;
    FrameRecord frame;
    frame.index = static_cast<std::int64_t>(result.frames.size());
    frame.frame_type = access_unit_type(*current);
    frame.size_bytes = current->bytes;
    frame.avg_qp = current->qp_sum / static_cast<double>(current->slices);
    result.frames.push_back(frame);
    current.reset();
  };

  for (const auto& nal : nals) {
    ++result.nal_counts[nal.nal_type];
    result.start_code_bytes += nal.prefix_size + nal.suffix_size;
    switch (nal.nal_type) {
      case kNalSps: {
        const SpsInfo sps = parse_sps(nal);
        sps_table[sps.sps_id] = sps;
        pending_bytes += nal.raw_size;
        break;
      }
      case kNalPps: {
        const PpsInfo pps = parse_pps(nal);
        pps_table[pps.pps_id] = pps;
        pending_bytes += nal.raw_size;
        break;
      }
      case kNalSliceDataA:
      case kNalSliceDataB:
      case kNalSliceDataC:
        throw UnsupportedFeature("data-partitioned slices (NAL types 2-4) are not supported");
      case kNalSlice:
      case kNalIdrSlice: {
        if (sps_table.empty()) throw MalformedStream("slice before any SPS");
        if (pps_table.empty()) throw MalformedStream("slice before any PPS");
        const SliceHeader header = parse_slice_header(nal, sps_table, pps_table);
        const SpsInfo& sps = sps_table.at(pps_table.at(header.pps_id).sps_id);
        if (!active_sps) {
          active_sps = sps;
          result.entropy_coding_mode = pps_table.at(header.pps_id).entropy_coding_mode;
        } else if (!(sps == *active_sps)) {
          result.warnings.push_back("sequence parameters changed at byte " + std::to_string(nal.offset) +
                                    "; discarding " + std::to_string(result.frames.size() + (current ? 1 : 0)) +
                                    " earlier frames");
          current.reset();
          result.frames.clear();
          active_sps = sps;
        }
        const bool new_picture = !current || header.first_mb_in_slice == 0 || header.frame_num != current->frame_num;
        if (new_picture) {
          close_current();
          current = OpenAccessUnit{};
          current->frame_num = header.frame_num;
        }
        current->bytes += pending_bytes + nal.raw_size;
        pending_bytes = 0;
        current->qp_sum += header.slice_qp;
        ++current->slices;
        const FrameType type = header.frame_type();
        current->any_b |= type == FrameType::B;
        current->any_p |= type == FrameType::P;
        current->any_unknown |= type == FrameType::unknown;
        break;
      }
      default:
        pending_bytes += nal.raw_size;
        break;
    }
  }

  if (!current && result.frames.empty()) {
    if (sps_table.empty()) throw MalformedStream("stream contains no SPS");
    if (pps_table.empty()) throw MalformedStream("stream contains no PPS");
    throw InvalidArgument("stream contains no slices");
  }
  // Trailing non-VCL units (end of sequence/stream, filler) close the last picture.
  current->bytes += pending_bytes;
  close_current();
  result.sps = *active_sps;
  return result;
}

nlohmann::json metadata_json(const ExtractResult& r) {
  nlohmann::json nal_counts = nlohmann::json::object();
  for (const auto& [type, count] : r.nal_counts) nal_counts[std::to_string(type)] = count;
  std::map<std::string, std::size_t> type_counts;
  std::uint64_t payload = 0;
  for (const auto& f : r.frames) {
    ++type_counts[std::string(to_string(f.frame_type))];
    payload += f.size_bytes;
  }
  const auto fps = r.sps.framerate();
  nlohmann::json j = {
      {"width", r.sps.width_px},
      {"height", r.sps.height_px},
      {"coded_width", r.sps.coded_width_px},
      {"coded_height", r.sps.coded_height_px},
      {"profile_idc", r.sps.profile_idc},
      {"level_idc", r.sps.level_idc},
      {"chroma_format_idc", r.sps.chroma_format_idc},
      {"bit_depth", r.sps.bit_depth_luma},
      {"entropy_coding", r.entropy_coding_mode ? "CABAC" : "CAVLC"},
      {"framerate_fps", fps ? nlohmann::json(*fps) : nlohmann::json(nullptr)},
      {"frame_count", r.frames.size()},
      {"frame_type_counts", type_counts},
      {"nal_counts", nal_counts},
      {"total_bytes", r.total_bytes},
      {"frame_bytes", payload},
      {"start_code_bytes", r.start_code_bytes},
      {"warnings", r.warnings},
  };
  return j;
}

}  // namespace nrvqa::h264
