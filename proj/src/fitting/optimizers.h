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

#include <functional>
#include <span>
#include <vector>

#include "nrvqa/fitting.h"

namespace nrvqa::detail {

struct OptimizerResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Clamps each coordinate into its interval.
void project(std::span<double> x, std::span<const Bounds> bounds);

using ScalarFunction = std::function<double(std::span<const double>)>;

// Adaptive-parameter Nelder-Mead over a box. Every trial point is projected
// into the box before evaluation. Stops when the simplex values agree to
// `relative_tolerance` or the simplex collapses.
OptimizerResult nelder_mead(const ScalarFunction& f, std::vector<double> x0, std::span<const Bounds> bounds,
                            int max_iterations, double relative_tolerance);

// Fills residuals and a per-residual validity flag for a parameter vector.
using ResidualFunction = std::function<void(std::span<const double>, std::span<double>, std::span<bool>)>;

// Levenberg-Marquardt on the sum of squared residuals with a central
// difference Jacobian; steps are projected into the box. Residuals flagged
// invalid keep their value but get a zero Jacobian row.
OptimizerResult levenberg_marquardt(const ResidualFunction& residuals, std::size_t residual_count,
                                    std::vector<double> x0, std::span<const Bounds> bounds, int max_iterations);

}  // namespace nrvqa::detail
