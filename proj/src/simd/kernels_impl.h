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

// Declarations shared by the per-ISA kernel translation units. Kept free of
// library headers so the AVX2 unit cannot emit vectorised copies of inline
// functions that the linker might pick for scalar callers.

#include <cstddef>
#include <cstdint>

#include "nrvqa/simd/moments.h"

namespace nrvqa::simd {

namespace scalar {
double sum(const double* x, std::size_t n);
double sum_squared_diff(const double* a, const double* b, std::size_t n);
CenteredMoments centered_moments(const double* x, const double* y, std::size_t n, double mean_x, double mean_y);
std::size_t count_exceeding(const double* a, const double* b, const double* threshold, std::size_t n);
std::size_t find_zero_zero_byte(const std::uint8_t* data, std::size_t n, std::size_t from, std::uint8_t third);
}  // namespace scalar

#if defined(NRVQA_HAVE_AVX2_KERNELS)
namespace avx2 {
double sum(const double* x, std::size_t n);
double sum_squared_diff(const double* a, const double* b, std::size_t n);
CenteredMoments centered_moments(const double* x, const double* y, std::size_t n, double mean_x, double mean_y);
std::size_t count_exceeding(const double* a, const double* b, const double* threshold, std::size_t n);
std::size_t find_zero_zero_byte(const std::uint8_t* data, std::size_t n, std::size_t from, std::uint8_t third);
}  // namespace avx2
#endif

}  // namespace nrvqa::simd
