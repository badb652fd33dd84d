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

#include <atomic>

#include "kernels_impl.h"
#include "nrvqa/error.h"
#include "nrvqa/simd/kernels.h"

namespace nrvqa::simd {

namespace {

constexpr KernelTable kScalarTable{Isa::scalar,
                                   scalar::sum,
                                   scalar::sum_squared_diff,
                                   scalar::centered_moments,
                                   scalar::count_exceeding,
                                   scalar::find_zero_zero_byte};

#if defined(NRVQA_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{Isa::avx2,
                                 avx2::sum,
                                 avx2::sum_squared_diff,
                                 avx2::centered_moments,
                                 avx2::count_exceeding,
                                 avx2::find_zero_zero_byte};
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(NRVQA_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* best_table() {
  const auto isas = available_isas();
  return &kernels_for(isas.back());
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{best_table()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> isas{Isa::scalar};
  if (cpu_supports(Isa::avx2)) isas.push_back(Isa::avx2);
  return isas;
}

const KernelTable& kernels_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw UnsupportedFeature("SIMD kernels for " + std::string(isa_name(isa)) + " are not available on this CPU");
  }
#if defined(NRVQA_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

void set_active_isa(Isa isa) { active_slot().store(&kernels_for(isa), std::memory_order_release); }

double sum(std::span<const double> x) { return active_kernels().sum(x.data(), x.size()); }

double sum_squared_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("sum_squared_diff: length mismatch");
  return active_kernels().sum_squared_diff(a.data(), b.data(), a.size());
}

CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y, double mean_x,
                                 double mean_y) {
  if (x.size() != y.size()) throw InvalidArgument("centered_moments: length mismatch");
  return active_kernels().centered_moments(x.data(), y.data(), x.size(), mean_x, mean_y);
}

std::size_t count_exceeding(std::span<const double> a, std::span<const double> b,
                            std::span<const double> threshold) {
  if (a.size() != b.size() || a.size() != threshold.size()) {
    throw InvalidArgument("count_exceeding: length mismatch");
  }
  return active_kernels().count_exceeding(a.data(), b.data(), threshold.data(), a.size());
}

std::size_t find_zero_zero_byte(std::span<const std::uint8_t> data, std::size_t from, std::uint8_t third) {
  if (from >= data.size()) return data.size();
  return active_kernels().find_zero_zero_byte(data.data(), data.size(), from, third);
}

}  // namespace nrvqa::simd
