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

// Lightweight H.264 Annex-B syntax reader. Parses NAL framing, SPS, PPS and
// slice headers up to slice_qp_delta; macroblock data is never entropy
// decoded, so skip ratio and motion vectors are left absent.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include "nrvqa/features.h"

namespace nrvqa::h264 {

enum NalType : int {
  kNalSlice = 1,
  kNalSliceDataA = 2,
  kNalSliceDataB = 3,
  kNalSliceDataC = 4,
  kNalIdrSlice = 5,
  kNalSei = 6,
  kNalSps = 7,
  kNalPps = 8,
  kNalAccessUnitDelimiter = 9,
  kNalEndOfSequence = 10,
  kNalEndOfStream = 11,
  kNalFiller = 12,
};

struct NalUnit {
  int nal_type = 0;
  int nal_ref_idc = 0;
  // RBSP after the one-byte NAL header, emulation-prevention bytes removed.
  std::vector<std::uint8_t> payload;
  // Byte position of the NAL header in the input.
  std::size_t offset = 0;
  // On-wire NAL length: header plus escaped payload.
  std::size_t raw_size = 0;
  // Start code plus any zero bytes preceding it (leading_zero_8bits /
  // zero_byte), and trailing zero bytes after the last NAL.
  std::size_t prefix_size = 0;
  std::size_t suffix_size = 0;
};

// MSB-first reader over an RBSP.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint32_t read_bits(int count);
  bool read_flag() { return read_bits(1) != 0; }
  std::uint32_t read_ue();
  std::int32_t read_se();
  void skip_bits(std::size_t count);

  std::size_t bits_left() const { return data_.size() * 8 - position_; }
  std::size_t position() const { return position_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t position_ = 0;
};

// ue(v). Throws MalformedStream when the bits run out mid-code.
std::uint32_t read_exp_golomb(BitReader& bits);

// Splits an Annex-B byte stream at 3- and 4-byte start codes. Throws
// MalformedStream when no start code is present or a NAL is empty or has the
// forbidden bit set.
std::vector<NalUnit> split_annexb(std::span<const std::uint8_t> bytes);

// Removes 0x03 from every 00 00 03 sequence.
std::vector<std::uint8_t> unescape_rbsp(std::span<const std::uint8_t> escaped);

struct SpsInfo {
  int sps_id = 0;
  int profile_idc = 0;
  int constraint_flags = 0;
  int level_idc = 0;
  int chroma_format_idc = 1;
  int bit_depth_luma = 8;
  int bit_depth_chroma = 8;
  int log2_max_frame_num = 4;
  int pic_order_cnt_type = 0;
  int log2_max_pic_order_cnt_lsb = 4;
  bool delta_pic_order_always_zero = false;
  bool frame_mbs_only = true;
  int coded_width_px = 0;
  int coded_height_px = 0;
  int crop_left = 0;
  int crop_right = 0;
  int crop_top = 0;
  int crop_bottom = 0;
  int width_px = 0;
  int height_px = 0;
  std::optional<std::uint32_t> num_units_in_tick;
  std::optional<std::uint32_t> time_scale;

  // Frame rate signalled in the VUI timing info, if any.
  std::optional<double> framerate() const;
  bool operator==(const SpsInfo&) const = default;
};

struct PpsInfo {
  int pps_id = 0;
  int sps_id = 0;
  bool entropy_coding_mode = false;
  bool bottom_field_pic_order_in_frame_present = false;
  int num_ref_idx_l0_default_active = 1;
  int num_ref_idx_l1_default_active = 1;
  bool weighted_pred = false;
  int weighted_bipred_idc = 0;
  int pic_init_qp = 26;
  bool redundant_pic_cnt_present = false;
};

struct SliceHeader {
  int nal_type = 0;
  int nal_ref_idc = 0;
  std::uint32_t first_mb_in_slice = 0;
  int slice_type = 0;  // raw value, 0..9
  int pps_id = 0;
  std::uint32_t frame_num = 0;
  bool field_pic = false;
  bool bottom_field = false;
  std::optional<std::uint32_t> idr_pic_id;
  int slice_qp = 0;

  FrameType frame_type() const;
};

// Precondition: nal.nal_type == 7 (InvalidArgument otherwise).
SpsInfo parse_sps(const NalUnit& nal);
// Precondition: nal.nal_type == 8.
PpsInfo parse_pps(const NalUnit& nal);
// Parses a slice header of a type 1 or 5 NAL up to slice_qp_delta.
SliceHeader parse_slice_header(const NalUnit& nal, const std::map<int, SpsInfo>& sps_table,
                               const std::map<int, PpsInfo>& pps_table);

struct ExtractResult {
  std::vector<FrameRecord> frames;
  SpsInfo sps;
  bool entropy_coding_mode = false;
  std::map<int, std::size_t> nal_counts;
  std::size_t total_bytes = 0;
  std::size_t start_code_bytes = 0;
  std::vector<std::string> warnings;
};

// One FrameRecord per access unit, in decode order. size_bytes sums the raw
// sizes of every NAL in the access unit (parameter sets and SEI preceding a
// picture belong to it); avg_qp is the mean slice QP.
ExtractResult extract_frames(std::span<const std::uint8_t> bytes);

// Metadata sidecar written next to the frame-stats CSV.
nlohmann::json metadata_json(const ExtractResult& result);

}  // namespace nrvqa::h264
