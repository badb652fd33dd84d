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

#include <cmath>

#include "kernels_impl.h"

namespace nrvqa::simd::scalar {

double sum(const double* x, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += x[i];
  return total;
}

double sum_squared_diff(const double* a, const double* b, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

CenteredMoments centered_moments(const double* x, const double* y, std::size_t n, double mean_x, double mean_y) {
  CenteredMoments m;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    m.xx += dx * dx;
    m.yy += dy * dy;
    m.xy += dx * dy;
  }
  return m;
}

std::size_t count_exceeding(const double* a, const double* b, const double* threshold, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(a[i] - b[i]) > threshold[i]) ++count;
  }
  return count;
}

std::size_t find_zero_zero_byte(const std::uint8_t* data, std::size_t n, std::size_t from, std::uint8_t third) {
  for (std::size_t p = from; p + 2 < n; ++p) {
    if (data[p] == 0 && data[p + 1] == 0 && data[p + 2] == third) return p;
  }
  return n;
}

}  // namespace nrvqa::simd::scalar
