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

// Seeded synthetic feature rows spanning realistic bit rates, frame rates,
// resolutions and displays, labelled by a chosen model.

#include <cstdint>
#include <random>

#include "nrvqa/dataset.h"
#include "nrvqa/models.h"

namespace nrvqa::testing {

struct SyntheticOptions {
  std::size_t rows = 200;
  std::uint64_t seed = 7;
  double noise_sigma = 0.0;
  // Sources shared by consecutive groups of this many rows.
  std::size_t rows_per_source = 5;
};

StreamFeatures random_features(std::mt19937_64& rng);
DisplayParams random_display(std::mt19937_64& rng, const StreamFeatures& f);

// Features and displays only; every mos is 3.
Dataset random_rows(const SyntheticOptions& options);

// Labels each row with `truth`'s prediction plus N(0, sigma) noise clamped to
// [1, 5]. Rows where `truth` fails are redrawn.
Dataset synthetic_dataset(const CoefficientSet& truth, const SyntheticOptions& options);

// Noise-free predictions of `truth` for every row.
std::vector<double> noiseless_mos(const CoefficientSet& truth, const Dataset& dataset);

// init * (1 + U(-fraction, fraction)) per coefficient.
CoefficientSet perturbed(const CoefficientSet& init, double fraction, std::uint64_t seed);

}  // namespace nrvqa::testing
