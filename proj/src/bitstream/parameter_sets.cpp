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

#include <string>

#include "nrvqa/bitstream.h"
#include "nrvqa/error.h"

namespace nrvqa::h264 {

namespace {

bool profile_has_chroma_info(int profile_idc) {
  switch (profile_idc) {
    case 100: case 110: case 122: case 244: case 44: case 83:
    case 86: case 118: case 128: case 138: case 139: case 134: case 135:
      return true;
    default:
      return false;
  }
}

void skip_scaling_list(BitReader& bits, int size) {
  int last_scale = 8;
  int next_scale = 8;
  for (int j = 0; j < size; ++j) {
    if (next_scale != 0) {
      const int delta = bits.read_se();
      if (delta < -128 || delta > 127) throw MalformedStream("SPS: delta_scale out of range");
      next_scale = (last_scale + delta + 256) % 256;
    }
    last_scale = next_scale == 0 ? last_scale : next_scale;
  }
}

std::uint32_t read_ue_max(BitReader& bits, std::uint32_t max, const char* what) {
  const std::uint32_t v = bits.read_ue();
  if (v > max) throw MalformedStream(std::string(what) + " out of range: " + std::to_string(v));
  return v;
}

void parse_vui_timing(BitReader& bits, SpsInfo& sps) {
  if (bits.read_flag()) {  // aspect_ratio_info_present_flag
    const auto aspect_ratio_idc = bits.read_bits(8);
    if (aspect_ratio_idc == 255) bits.skip_bits(32);  // sar_width, sar_height
  }
  if (bits.read_flag()) bits.skip_bits(1);  // overscan_appropriate_flag
  if (bits.read_flag()) {                   // video_signal_type_present_flag
    bits.skip_bits(4);                      // video_format, video_full_range_flag
    if (bits.read_flag()) bits.skip_bits(24);
  }
  if (bits.read_flag()) {  // chroma_loc_info_present_flag
    bits.read_ue();
    bits.read_ue();
  }
  if (bits.read_flag()) {  // timing_info_present_flag
    sps.num_units_in_tick = bits.read_bits(32);
    sps.time_scale = bits.read_bits(32);
  }
  // Remaining VUI fields carry nothing the quality models use.
}

void skip_ref_pic_list_modification(BitReader& bits) {
  if (!bits.read_flag()) return;
  for (int guard = 0; guard < 1024; ++guard) {
    const std::uint32_t idc = bits.read_ue();
    if (idc == 3) return;
    if (idc > 2) throw MalformedStream("slice: modification_of_pic_nums_idc out of range");
    bits.read_ue();
  }
  throw MalformedStream("slice: unterminated ref_pic_list_modification");
}

void skip_pred_weight_table(BitReader& bits, int chroma_array_type, int l0_count, int l1_count) {
  read_ue_max(bits, 7, "luma_log2_weight_denom");
  if (chroma_array_type != 0) read_ue_max(bits, 7, "chroma_log2_weight_denom");
  for (int list = 0; list < 2; ++list) {
    const int count = list == 0 ? l0_count : l1_count;
    for (int i = 0; i < count; ++i) {
      if (bits.read_flag()) {
        bits.read_se();
        bits.read_se();
      }
      if (chroma_array_type != 0 && bits.read_flag()) {
        for (int j = 0; j < 4; ++j) bits.read_se();
      }
    }
  }
}

void skip_dec_ref_pic_marking(BitReader& bits, bool idr) {
  if (idr) {
    bits.skip_bits(2);  // no_output_of_prior_pics_flag, long_term_reference_flag
    return;
  }
  if (!bits.read_flag()) return;
  for (int guard = 0; guard < 1024; ++guard) {
    const std::uint32_t op = bits.read_ue();
    if (op == 0) return;
    if (op > 6) throw MalformedStream("slice: memory_management_control_operation out of range");
    if (op == 1 || op == 3) bits.read_ue();
    if (op == 2) bits.read_ue();
    if (op == 3 || op == 6) bits.read_ue();
    if (op == 4) bits.read_ue();
  }
  throw MalformedStream("slice: unterminated dec_ref_pic_marking");
}

}  // namespace

std::optional<double> SpsInfo::framerate() const {
  if (!num_units_in_tick || !time_scale || *num_units_in_tick == 0 || *time_scale == 0) return std::nullopt;
  return static_cast<double>(*time_scale) / (2.0 * static_cast<double>(*num_units_in_tick));
}

FrameType SliceHeader::frame_type() const {
  switch (slice_type % 5) {
    case 0: case 3: return FrameType::P;
    case 1: return FrameType::B;
    case 2: case 4: return FrameType::I;
  }
  return FrameType::unknown;
}

SpsInfo parse_sps(const NalUnit& nal) {
  if (nal.nal_type != kNalSps) {
    throw InvalidArgument("parse_sps: expected NAL type 7, got " + std::to_string(nal.nal_type));
  }
  BitReader bits(nal.payload);
  SpsInfo sps;
  sps.profile_idc = static_cast<int>(bits.read_bits(8));
  sps.constraint_flags = static_cast<int>(bits.read_bits(8));
  sps.level_idc = static_cast<int>(bits.read_bits(8));
  sps.sps_id = static_cast<int>(read_ue_max(bits, 31, "seq_parameter_set_id"));

  if (profile_has_chroma_info(sps.profile_idc)) {
    sps.chroma_format_idc = static_cast<int>(read_ue_max(bits, 3, "chroma_format_idc"));
    if (sps.chroma_format_idc == 3 && bits.read_flag()) {
      throw UnsupportedFeature("SPS: separate_colour_plane_flag is not supported");
    }
    sps.bit_depth_luma = static_cast<int>(read_ue_max(bits, 6, "bit_depth_luma_minus8")) + 8;
    sps.bit_depth_chroma = static_cast<int>(read_ue_max(bits, 6, "bit_depth_chroma_minus8")) + 8;
    if (sps.bit_depth_luma != 8 || sps.bit_depth_chroma != 8) {
      throw UnsupportedFeature("SPS: only 8-bit video is supported (luma " + std::to_string(sps.bit_depth_luma) +
                               ", chroma " + std::to_string(sps.bit_depth_chroma) + ")");
    }
    bits.skip_bits(1);  // qpprime_y_zero_transform_bypass_flag
    if (bits.read_flag()) {
      const int lists = sps.chroma_format_idc != 3 ? 8 : 12;
      for (int i = 0; i < lists; ++i) {
        if (bits.read_flag()) skip_scaling_list(bits, i < 6 ? 16 : 64);
      }
    }
  }

  sps.log2_max_frame_num = static_cast<int>(read_ue_max(bits, 12, "log2_max_frame_num_minus4")) + 4;
  sps.pic_order_cnt_type = static_cast<int>(read_ue_max(bits, 2, "pic_order_cnt_type"));
  if (sps.pic_order_cnt_type == 0) {
    sps.log2_max_pic_order_cnt_lsb = static_cast<int>(read_ue_max(bits, 12, "log2_max_pic_order_cnt_lsb_minus4")) + 4;
  } else if (sps.pic_order_cnt_type == 1) {
    sps.delta_pic_order_always_zero = bits.read_flag();
    bits.read_se();  // offset_for_non_ref_pic
    bits.read_se();  // offset_for_top_to_bottom_field
    const auto cycle = read_ue_max(bits, 255, "num_ref_frames_in_pic_order_cnt_cycle");
    for (std::uint32_t i = 0; i < cycle; ++i) bits.read_se();
  }
  bits.read_ue();     // max_num_ref_frames
  bits.skip_bits(1);  // gaps_in_frame_num_value_allowed_flag
  const auto width_mbs = bits.read_ue() + 1;
  const auto height_map_units = bits.read_ue() + 1;
  sps.frame_mbs_only = bits.read_flag();
  if (!sps.frame_mbs_only) bits.skip_bits(1);  // mb_adaptive_frame_field_flag
  bits.skip_bits(1);                           // direct_8x8_inference_flag
  if (width_mbs > 1024 || height_map_units > 1024) throw MalformedStream("SPS: picture size out of range");

  sps.coded_width_px = static_cast<int>(width_mbs) * 16;
  sps.coded_height_px = (sps.frame_mbs_only ? 1 : 2) * static_cast<int>(height_map_units) * 16;
  if (bits.read_flag()) {  // frame_cropping_flag
    sps.crop_left = static_cast<int>(bits.read_ue());
    sps.crop_right = static_cast<int>(bits.read_ue());
    sps.crop_top = static_cast<int>(bits.read_ue());
    sps.crop_bottom = static_cast<int>(bits.read_ue());
  }
  const int chroma_array_type = sps.chroma_format_idc;
  const int sub_width_c = chroma_array_type == 3 ? 1 : 2;
  const int sub_height_c = chroma_array_type == 1 ? 2 : 1;
  const int crop_unit_x = chroma_array_type == 0 ? 1 : sub_width_c;
  const int crop_unit_y = (chroma_array_type == 0 ? 1 : sub_height_c) * (sps.frame_mbs_only ? 1 : 2);
  sps.width_px = sps.coded_width_px - crop_unit_x * (sps.crop_left + sps.crop_right);
  sps.height_px = sps.coded_height_px - crop_unit_y * (sps.crop_top + sps.crop_bottom);
  if (sps.width_px <= 0 || sps.height_px <= 0) throw MalformedStream("SPS: cropping removes the whole picture");

  if (bits.read_flag()) parse_vui_timing(bits, sps);
  return sps;
}

PpsInfo parse_pps(const NalUnit& nal) {
  if (nal.nal_type != kNalPps) {
    throw InvalidArgument("parse_pps: expected NAL type 8, got " + std::to_string(nal.nal_type));
  }
  BitReader bits(nal.payload);
  PpsInfo pps;
  pps.pps_id = static_cast<int>(read_ue_max(bits, 255, "pic_parameter_set_id"));
  pps.sps_id = static_cast<int>(read_ue_max(bits, 31, "seq_parameter_set_id"));
  pps.entropy_coding_mode = bits.read_flag();
  pps.bottom_field_pic_order_in_frame_present = bits.read_flag();
  if (bits.read_ue() != 0) throw UnsupportedFeature("PPS: slice groups (FMO) are not supported");
  pps.num_ref_idx_l0_default_active = static_cast<int>(read_ue_max(bits, 31, "num_ref_idx_l0_default_active_minus1")) + 1;
  pps.num_ref_idx_l1_default_active = static_cast<int>(read_ue_max(bits, 31, "num_ref_idx_l1_default_active_minus1")) + 1;
  pps.weighted_pred = bits.read_flag();
  pps.weighted_bipred_idc = static_cast<int>(bits.read_bits(2));
  const int pic_init_qp_minus26 = bits.read_se();
  if (pic_init_qp_minus26 < -26 || pic_init_qp_minus26 > 25) throw MalformedStream("PPS: pic_init_qp_minus26 out of range");
  pps.pic_init_qp = 26 + pic_init_qp_minus26;
  bits.read_se();     // pic_init_qs_minus26
  bits.read_se();     // chroma_qp_index_offset
  bits.skip_bits(2);  // deblocking_filter_control_present_flag, constrained_intra_pred_flag
  pps.redundant_pic_cnt_present = bits.read_flag();
  return pps;
}

SliceHeader parse_slice_header(const NalUnit& nal, const std::map<int, SpsInfo>& sps_table,
                               const std::map<int, PpsInfo>& pps_table) {
  if (nal.nal_type != kNalSlice && nal.nal_type != kNalIdrSlice) {
    throw InvalidArgument("parse_slice_header: expected NAL type 1 or 5, got " + std::to_string(nal.nal_type));
  }
  BitReader bits(nal.payload);
  SliceHeader h;
  h.nal_type = nal.nal_type;
  h.nal_ref_idc = nal.nal_ref_idc;
  h.first_mb_in_slice = bits.read_ue();
  h.slice_type = static_cast<int>(read_ue_max(bits, 9, "slice_type"));
  h.pps_id = static_cast<int>(read_ue_max(bits, 255, "pic_parameter_set_id"));
  const auto pps_it = pps_table.find(h.pps_id);
  if (pps_it == pps_table.end()) {
    throw MalformedStream("slice at byte " + std::to_string(nal.offset) + " references unknown PPS " +
                          std::to_string(h.pps_id));
  }
  const PpsInfo& pps = pps_it->second;
  const auto sps_it = sps_table.find(pps.sps_id);
  if (sps_it == sps_table.end()) {
    throw MalformedStream("PPS " + std::to_string(pps.pps_id) + " references unknown SPS " + std::to_string(pps.sps_id));
  }
  const SpsInfo& sps = sps_it->second;
  const bool idr = nal.nal_type == kNalIdrSlice;
  const int kind = h.slice_type % 5;
  const bool is_p = kind == 0 || kind == 3;
  const bool is_b = kind == 1;
  if (idr && kind != 2 && kind != 4) throw MalformedStream("IDR picture contains a non-intra slice");

  h.frame_num = bits.read_bits(sps.log2_max_frame_num);
  if (!sps.frame_mbs_only) {
    h.field_pic = bits.read_flag();
    if (h.field_pic) h.bottom_field = bits.read_flag();
  }
  if (idr) h.idr_pic_id = read_ue_max(bits, 65535, "idr_pic_id");
  if (sps.pic_order_cnt_type == 0) {
    bits.skip_bits(static_cast<std::size_t>(sps.log2_max_pic_order_cnt_lsb));
    if (pps.bottom_field_pic_order_in_frame_present && !h.field_pic) bits.read_se();
  } else if (sps.pic_order_cnt_type == 1 && !sps.delta_pic_order_always_zero) {
    bits.read_se();
    if (pps.bottom_field_pic_order_in_frame_present && !h.field_pic) bits.read_se();
  }
  if (pps.redundant_pic_cnt_present) bits.read_ue();
  if (is_b) bits.skip_bits(1);  // direct_spatial_mv_pred_flag

  int l0_active = pps.num_ref_idx_l0_default_active;
  int l1_active = pps.num_ref_idx_l1_default_active;
  if (is_p || is_b) {
    if (bits.read_flag()) {  // num_ref_idx_active_override_flag
      l0_active = static_cast<int>(read_ue_max(bits, 31, "num_ref_idx_l0_active_minus1")) + 1;
      if (is_b) l1_active = static_cast<int>(read_ue_max(bits, 31, "num_ref_idx_l1_active_minus1")) + 1;
    }
  }
  if (kind != 2 && kind != 4) {
    skip_ref_pic_list_modification(bits);
    if (is_b) skip_ref_pic_list_modification(bits);
  }
  if ((pps.weighted_pred && is_p) || (pps.weighted_bipred_idc == 1 && is_b)) {
    skip_pred_weight_table(bits, sps.chroma_format_idc, l0_active, is_b ? l1_active : 0);
  }
  if (nal.nal_ref_idc != 0) skip_dec_ref_pic_marking(bits, idr);
  if (pps.entropy_coding_mode && kind != 2 && kind != 4) read_ue_max(bits, 2, "cabac_init_idc");
  const int slice_qp_delta = bits.read_se();
  h.slice_qp = pps.pic_init_qp + slice_qp_delta;
  if (h.slice_qp < 0 || h.slice_qp > 51) {
    throw MalformedStream("slice at byte " + std::to_string(nal.offset) + " has QP " + std::to_string(h.slice_qp) +
                          " outside [0, 51]");
  }
  return h;
}

}  // namespace nrvqa::h264
