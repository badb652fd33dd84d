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

#include <algorithm>
#include <cmath>
#include <vector>

#include "nrvqa/error.h"
#include "nrvqa/evaluation.h"
#include "nrvqa/simd/kernels.h"

namespace nrvqa {

namespace {

void require_same_length(std::span<const double> x, std::span<const double> y, const char* what) {
  if (x.size() != y.size()) throw InvalidArgument(std::string(what) + ": inputs differ in length");
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
}

}  // namespace

std::optional<double> try_pcc(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, "pcc");
  if (x.size() < 2 || constant(x) || constant(y)) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mean_x = simd::sum(x) / n;
  const double mean_y = simd::sum(y) / n;
  const simd::CenteredMoments m = simd::centered_moments(x, y, mean_x, mean_y);
  if (!(m.xx > 0.0) || !(m.yy > 0.0)) return std::nullopt;
  return std::clamp(m.xy / std::sqrt(m.xx * m.yy), -1.0, 1.0);
}

double pcc(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, "pcc");
  if (x.size() < 2) throw InvalidArgument("pcc: needs at least two points");
  const auto r = try_pcc(x, y);
  if (!r) throw DomainError("pcc: correlation undefined for zero-variance input");
  return *r;
}

double rmse(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, "rmse");
  if (x.empty()) throw InvalidArgument("rmse: empty input");
  return std::sqrt(simd::sum_squared_diff(x, y) / static_cast<double>(x.size()));
}

double outlier_ratio(std::span<const SubjectiveRecord> subjective, std::span<const double> predicted,
                     double fallback_threshold) {
  if (subjective.size() != predicted.size()) throw InvalidArgument("outlier_ratio: inputs differ in length");
  if (subjective.empty()) return 0.0;
  std::vector<double> mos(subjective.size());
  std::vector<double> threshold(subjective.size());
  for (std::size_t i = 0; i < subjective.size(); ++i) {
    mos[i] = subjective[i].mos;
    threshold[i] = subjective[i].ci95_halfwidth.value_or(fallback_threshold);
  }
  const std::size_t outliers = simd::count_exceeding(mos, predicted, threshold);
  return static_cast<double>(outliers) / static_cast<double>(subjective.size());
}

}  // namespace nrvqa
