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

// Compiled with -mavx2. Only intrinsics and the plain declarations from
// kernels_impl.h may be used here.

#include <immintrin.h>

#include "kernels_impl.h"

namespace nrvqa::simd::avx2 {

namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double sum(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  double total = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += x[i];
  return total;
}

double sum_squared_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
  }
  double total = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

CenteredMoments centered_moments(const double* x, const double* y, std::size_t n, double mean_x, double mean_y) {
  const __m256d mx = _mm256_set1_pd(mean_x);
  const __m256d my = _mm256_set1_pd(mean_y);
  __m256d xx = _mm256_setzero_pd();
  __m256d yy = _mm256_setzero_pd();
  __m256d xy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), mx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), my);
    xx = _mm256_add_pd(xx, _mm256_mul_pd(dx, dx));
    yy = _mm256_add_pd(yy, _mm256_mul_pd(dy, dy));
    xy = _mm256_add_pd(xy, _mm256_mul_pd(dx, dy));
  }
  CenteredMoments m{horizontal_sum(xx), horizontal_sum(yy), horizontal_sum(xy)};
  for (; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    m.xx += dx * dx;
    m.yy += dy * dy;
    m.xy += dx * dy;
  }
  return m;
}

std::size_t count_exceeding(const double* a, const double* b, const double* threshold, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff = _mm256_andnot_pd(sign, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    const __m256d over = _mm256_cmp_pd(diff, _mm256_loadu_pd(threshold + i), _CMP_GT_OQ);
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(over))));
  }
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    if ((d < 0 ? -d : d) > threshold[i]) ++count;
  }
  return count;
}

std::size_t find_zero_zero_byte(const std::uint8_t* data, std::size_t n, std::size_t from, std::uint8_t third) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i last = _mm256_set1_epi8(static_cast<char>(third));
  std::size_t p = from;
  for (; p + 34 <= n; p += 32) {
    const auto* base = reinterpret_cast<const __m256i*>(data + p);
    const __m256i b0 = _mm256_loadu_si256(base);
    const __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + p + 1));
    const __m256i b2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + p + 2));
    const __m256i hit = _mm256_and_si256(_mm256_and_si256(_mm256_cmpeq_epi8(b0, zero), _mm256_cmpeq_epi8(b1, zero)),
                                         _mm256_cmpeq_epi8(b2, last));
    const unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(hit));
    if (mask != 0) return p + static_cast<std::size_t>(__builtin_ctz(mask));
  }
  for (; p + 2 < n; ++p) {
    if (data[p] == 0 && data[p + 1] == 0 && data[p + 2] == third) return p;
  }
  return n;
}

}  // namespace nrvqa::simd::avx2
