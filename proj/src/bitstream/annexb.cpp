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

#include "nrvqa/bitstream.h"
#include "nrvqa/error.h"
#include "nrvqa/simd/kernels.h"

namespace nrvqa::h264 {

std::vector<std::uint8_t> unescape_rbsp(std::span<const std::uint8_t> escaped) {
  std::vector<std::uint8_t> out;
  out.reserve(escaped.size());
  std::size_t copied = 0;
  for (std::size_t p = simd::find_zero_zero_byte(escaped, 0, 0x03); p < escaped.size();
       p = simd::find_zero_zero_byte(escaped, p + 3, 0x03)) {
    out.insert(out.end(), escaped.begin() + static_cast<std::ptrdiff_t>(copied),
               escaped.begin() + static_cast<std::ptrdiff_t>(p + 2));
    copied = p + 3;
  }
  out.insert(out.end(), escaped.begin() + static_cast<std::ptrdiff_t>(copied), escaped.end());
  return out;
}

std::vector<NalUnit> split_annexb(std::span<const std::uint8_t> bytes) {
  std::size_t start_code = simd::find_zero_zero_byte(bytes, 0, 0x01);
  if (start_code >= bytes.size()) throw MalformedStream("no Annex-B start code found");
  for (std::size_t i = 0; i < start_code; ++i) {
    if (bytes[i] != 0) throw MalformedStream("non-zero bytes before the first start code");
  }

  std::vector<NalUnit> nals;
  std::size_t prefix_begin = 0;
  while (start_code < bytes.size()) {
    const std::size_t begin = start_code + 3;
    std::size_t next = simd::find_zero_zero_byte(bytes, begin, 0x01);
    // Zero bytes ahead of the next start code belong to it (zero_byte), or
    // are trailing_zero_8bits at the end of the stream.
    std::size_t end = next;
    while (end > begin && bytes[end - 1] == 0) --end;
    if (end == begin) throw MalformedStream("empty NAL unit at byte " + std::to_string(begin));

    const std::uint8_t header = bytes[begin];
    if (header & 0x80) throw MalformedStream("forbidden_zero_bit set at byte " + std::to_string(begin));
    NalUnit nal;
    nal.nal_type = header & 0x1f;
    nal.nal_ref_idc = (header >> 5) & 0x3;
    nal.offset = begin;
    nal.raw_size = end - begin;
    nal.prefix_size = begin - prefix_begin;
    nal.payload = unescape_rbsp(bytes.subspan(begin + 1, end - begin - 1));
    if (next >= bytes.size()) nal.suffix_size = bytes.size() - end;
    nals.push_back(std::move(nal));

    prefix_begin = end;
    start_code = next;
  }
  return nals;
}

}  // namespace nrvqa::h264
