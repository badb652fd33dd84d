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

namespace nrvqa::simd {

// Sums of centred products: Σ(x-mx)², Σ(y-my)², Σ(x-mx)(y-my).
struct CenteredMoments {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;
};

}  // namespace nrvqa::simd
