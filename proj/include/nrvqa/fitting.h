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

// Least-squares coefficient fitting: seeded multi-start Nelder-Mead with box
// bounds enforced by projection, followed by a Levenberg-Marquardt polish of
// each start's simplex optimum.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "nrvqa/dataset.h"
#include "nrvqa/models.h"

namespace nrvqa {

// SSE contribution of a row whose prediction leaves the model's domain.
inline constexpr double kErrorPenalty = 1e6;
inline constexpr double kDefaultBound = 1e4;

struct Bounds {
  double lower = -kDefaultBound;
  double upper = kDefaultBound;
};

struct FitOptions {
  int starts = 8;
  int max_iterations = 2000;       // simplex iterations per start
  double relative_tolerance = 1e-8;
  double perturbation = 0.2;       // starts 1.. draw init * (1 + U(-p, p))
  int polish_iterations = 200;     // Levenberg-Marquardt steps per start; 0 disables
  std::uint64_t seed = 42;
  // One interval per coefficient; [-1e4, 1e4] each when absent.
  std::optional<std::vector<Bounds>> bounds;
};

struct FitResult {
  CoefficientSet coefficients;
  double final_sse = 0.0;
  int iterations = 0;  // simplex iterations plus polish steps, summed over starts
  bool converged = false;
  // mos - prediction per training row; sqrt(kErrorPenalty) for failing rows
  // so that final_sse equals the sum of squares.
  std::vector<double> per_row_residuals;
  std::size_t failed_rows = 0;
};

// Sum of squared residuals with kErrorPenalty per failing row.
double objective(const CoefficientSet& coefficients, const Dataset& dataset);
// Throws InvalidArgument when values do not match the model's arity.
double objective(ModelId model, std::span<const double> values, const Dataset& dataset);

// Throws InvalidArgument on an empty dataset, arity mismatch, malformed
// bounds, or an init whose model differs from `model`.
FitResult fit(ModelId model, const Dataset& train, const std::optional<CoefficientSet>& init = std::nullopt,
              const FitOptions& options = {});

nlohmann::json to_json(const FitResult& result);

}  // namespace nrvqa
