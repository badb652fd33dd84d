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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "nrvqa/error.h"
#include "nrvqa/evaluation.h"
#include "nrvqa/simd/kernels.h"

namespace nrvqa::simd {

void PrintTo(Isa isa, std::ostream* os) { *os << isa_name(isa); }

namespace {

// Lengths straddling every vector width and tail length.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 32, 33, 63, 64, 65, 127, 1000, 1003};

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

double tolerance(std::size_t n, double magnitude) { return 1e-13 * static_cast<double>(n + 1) * (1 + magnitude); }

class Equivalence : public ::testing::TestWithParam<Isa> {
 protected:
  void SetUp() override {
    if (GetParam() != Isa::scalar) {
      bool present = false;
      for (const Isa isa : available_isas()) present = present || isa == GetParam();
      if (!present) GTEST_SKIP() << isa_name(GetParam()) << " not supported by this CPU";
    }
  }
  const KernelTable& ref() const { return kernels_for(Isa::scalar); }
  const KernelTable& vec() const { return kernels_for(GetParam()); }
};

TEST_P(Equivalence, FloatingPointKernels) {
  std::mt19937_64 rng(1);
  for (const std::size_t n : kLengths) {
    const auto a = random_vector(rng, n, -5, 5);
    const auto b = random_vector(rng, n, -5, 5);
    EXPECT_NEAR(vec().sum(a.data(), n), ref().sum(a.data(), n), tolerance(n, 5)) << n;
    const double ssd = ref().sum_squared_diff(a.data(), b.data(), n);
    EXPECT_NEAR(vec().sum_squared_diff(a.data(), b.data(), n), ssd, tolerance(n, ssd)) << n;
    const auto r = ref().centered_moments(a.data(), b.data(), n, 0.3, -0.2);
    const auto v = vec().centered_moments(a.data(), b.data(), n, 0.3, -0.2);
    EXPECT_NEAR(v.xx, r.xx, tolerance(n, r.xx)) << n;
    EXPECT_NEAR(v.yy, r.yy, tolerance(n, r.yy)) << n;
    EXPECT_NEAR(v.xy, r.xy, tolerance(n, std::abs(r.xy))) << n;
  }
}

TEST_P(Equivalence, CountExceedingIsExact) {
  std::mt19937_64 rng(2);
  for (const std::size_t n : kLengths) {
    const auto a = random_vector(rng, n, 1, 5);
    const auto b = random_vector(rng, n, 1, 5);
    const auto t = random_vector(rng, n, 0, 1);
    EXPECT_EQ(vec().count_exceeding(a.data(), b.data(), t.data(), n),
              ref().count_exceeding(a.data(), b.data(), t.data(), n))
        << n;
  }
  // Ties are not exceedances.
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> b = {1.5, 2, 3.25, 4, 5};
  const std::vector<double> t = {0.5, 0, 0.25, 0, 0};
  EXPECT_EQ(vec().count_exceeding(a.data(), b.data(), t.data(), 5), 0u);
}

TEST_P(Equivalence, ByteScanner) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 300)(rng);
    std::vector<std::uint8_t> data(n);
    // Sparse alphabet so that 00 00 xx patterns occur often, including
    // across 32-byte block edges.
    for (auto& x : data) x = static_cast<std::uint8_t>(rng() % 4 == 0 ? rng() % 4 : 0);
    for (const std::uint8_t third : {std::uint8_t{1}, std::uint8_t{3}}) {
      for (std::size_t from = 0; from < n; from += 7) {
        EXPECT_EQ(vec().find_zero_zero_byte(data.data(), n, from, third),
                  ref().find_zero_zero_byte(data.data(), n, from, third))
            << "n=" << n << " from=" << from;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Isas, Equivalence, ::testing::Values(Isa::scalar, Isa::avx2),
                         [](const auto& param_info) { return std::string(isa_name(param_info.param)); });

TEST(ScalarReference, KnownValues) {
  const auto& k = kernels_for(Isa::scalar);
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {1, 1, 1};
  EXPECT_EQ(k.sum(a.data(), 3), 6.0);
  EXPECT_EQ(k.sum_squared_diff(a.data(), b.data(), 3), 5.0);
  const auto m = k.centered_moments(a.data(), a.data(), 3, 2.0, 2.0);
  EXPECT_EQ(m.xx, 2.0);
  EXPECT_EQ(m.xy, 2.0);
  const std::vector<std::uint8_t> bytes = {7, 0, 0, 1, 0, 0, 3, 0, 0};
  EXPECT_EQ(k.find_zero_zero_byte(bytes.data(), bytes.size(), 0, 1), 1u);
  EXPECT_EQ(k.find_zero_zero_byte(bytes.data(), bytes.size(), 2, 1), bytes.size());
  EXPECT_EQ(k.find_zero_zero_byte(bytes.data(), bytes.size(), 0, 3), 4u);
}

TEST(Dispatch, ScalarAlwaysAvailableAndSwitchable) {
  const auto isas = available_isas();
  ASSERT_FALSE(isas.empty());
  EXPECT_EQ(isas.front(), Isa::scalar);
  const Isa original = active_kernels().isa;
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  const std::vector<double> y = {2, 1, 4, 3, 6, 5, 8, 7, 10};
  std::vector<double> results;
  for (const Isa isa : isas) {
    set_active_isa(isa);
    EXPECT_EQ(active_kernels().isa, isa);
    EXPECT_EQ(sum(x), 45.0);
    results.push_back(pcc(x, y));
  }
  for (const double r : results) EXPECT_NEAR(r, results.front(), 1e-14);
  set_active_isa(original);
}

TEST(Dispatch, KernelsForMatchesAvailability) {
  const auto isas = available_isas();
  for (const Isa isa : {Isa::scalar, Isa::avx2}) {
    if (std::find(isas.begin(), isas.end(), isa) != isas.end()) {
      EXPECT_EQ(kernels_for(isa).isa, isa);
    } else {
      EXPECT_THROW(kernels_for(isa), UnsupportedFeature);
      EXPECT_THROW(set_active_isa(isa), UnsupportedFeature);
    }
  }
}

TEST(Wrappers, LengthMismatch) {
  const std::vector<double> a = {1, 2};
  const std::vector<double> b = {1};
  EXPECT_THROW(sum_squared_diff(a, b), InvalidArgument);
}

}  // namespace
}  // namespace nrvqa::simd
