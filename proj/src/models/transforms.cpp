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

#include "nrvqa/error.h"
#include "nrvqa/models.h"

namespace nrvqa {

namespace {

constexpr double kBridgeR = 10.0;
constexpr double kMaxMos = 4.5;

double cubic(double r) { return 1.0 + 0.035 * r + r * (r - 60.0) * (100.0 - r) * 7e-6; }

const double kBridgeMos = cubic(kBridgeR);

}  // namespace

double mos_from_r(double r) {
  if (std::isnan(r)) throw InvalidArgument("mos_from_r: non-finite input");
  r = std::clamp(r, 0.0, 100.0);
  if (r < kBridgeR) return 1.0 + r * (kBridgeMos - 1.0) / kBridgeR;
  return cubic(r);
}

double r_from_mos(double mos) {
  if (std::isnan(mos)) throw InvalidArgument("r_from_mos: non-finite input");
  mos = std::clamp(mos, 1.0, kMaxMos);
  if (mos <= kBridgeMos) return (mos - 1.0) * kBridgeR / (kBridgeMos - 1.0);
  // The cubic is strictly increasing on [10, 100] (slope >= 0.007): Newton
  // steps kept inside a shrinking bisection bracket.
  double lo = kBridgeR;
  double hi = 100.0;
  double r = kBridgeR + (mos - kBridgeMos) * (100.0 - kBridgeR) / (kMaxMos - kBridgeMos);
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double g = cubic(r) - mos;
    if (g == 0.0) return r;
    if (g < 0.0) lo = r;
    else hi = r;
    const double slope = 0.035 + 7e-6 * (-3.0 * r * r + 320.0 * r - 6000.0);
    double next = r - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - r) <= 1e-14 * r) return next;
    r = next;
  }
  return r;
}

}  // namespace nrvqa
