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

namespace nrvqa::h264 {

std::uint32_t BitReader::read_bits(int count) {
  if (count < 0 || count > 32) throw InvalidArgument("read_bits: count must lie in [0, 32]");
  if (static_cast<std::size_t>(count) > bits_left()) throw MalformedStream("bitstream exhausted");
  std::uint32_t value = 0;
  for (int i = 0; i < count; ++i) {
    const std::uint8_t byte = data_[position_ >> 3];
    const int bit = (byte >> (7 - (position_ & 7))) & 1;
    value = (value << 1) | static_cast<std::uint32_t>(bit);
    ++position_;
  }
  return value;
}

std::uint32_t BitReader::read_ue() { return read_exp_golomb(*this); }

std::int32_t BitReader::read_se() {
  const std::uint32_t k = read_ue();
  const auto magnitude = static_cast<std::int64_t>((static_cast<std::uint64_t>(k) + 1) / 2);
  return static_cast<std::int32_t>((k & 1) ? magnitude : -magnitude);
}

void BitReader::skip_bits(std::size_t count) {
  if (count > bits_left()) throw MalformedStream("bitstream exhausted");
  position_ += count;
}

std::uint32_t read_exp_golomb(BitReader& bits) {
  int leading_zeros = 0;
  while (!bits.read_flag()) {
    if (++leading_zeros > 31) throw MalformedStream("Exp-Golomb code longer than 32 bits");
  }
  if (leading_zeros == 0) return 0;
  const std::uint64_t suffix = bits.read_bits(leading_zeros);
  return static_cast<std::uint32_t>((std::uint64_t{1} << leading_zeros) - 1 + suffix);
}

}  // namespace nrvqa::h264
