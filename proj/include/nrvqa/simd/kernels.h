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

// Data-parallel inner loops shared by the metrics, the fitting objective and
// the Annex-B scanner. Each kernel has a scalar reference implementation and
// optional vector variants; the best variant supported by the running CPU is
// selected once at first use. Vector variants reassociate floating-point
// sums, so they agree with the scalar reference to rounding, not bit-for-bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "nrvqa/simd/moments.h"

namespace nrvqa::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Raw-pointer kernel ABI. Vector implementations live in translation units
// compiled with ISA-specific flags and must not see inline library code.
struct KernelTable {
  Isa isa;
  double (*sum)(const double* x, std::size_t n);
  double (*sum_squared_diff)(const double* a, const double* b, std::size_t n);
  CenteredMoments (*centered_moments)(const double* x, const double* y, std::size_t n, double mean_x,
                                      double mean_y);
  std::size_t (*count_exceeding)(const double* a, const double* b, const double* threshold, std::size_t n);
  std::size_t (*find_zero_zero_byte)(const std::uint8_t* data, std::size_t n, std::size_t from,
                                     std::uint8_t third);
};

// ISAs compiled in and supported by this CPU, scalar first.
std::vector<Isa> available_isas();

const KernelTable& kernels_for(Isa isa);

// Table in use by the span wrappers below.
const KernelTable& active_kernels();

// Pins the active table (tests and benchmarks). Throws UnsupportedFeature when
// the ISA is not available.
void set_active_isa(Isa isa);

double sum(std::span<const double> x);
double sum_squared_diff(std::span<const double> a, std::span<const double> b);
CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y, double mean_x,
                                 double mean_y);
// Number of i with |a[i] - b[i]| > threshold[i].
std::size_t count_exceeding(std::span<const double> a, std::span<const double> b,
                            std::span<const double> threshold);
// First position p >= from with data[p..p+2] == {0, 0, third}; data.size()
// when absent.
std::size_t find_zero_zero_byte(std::span<const std::uint8_t> data, std::size_t from, std::uint8_t third);

}  // namespace nrvqa::simd
