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
#include <numeric>

#include "fitting/optimizers.h"

namespace nrvqa::detail {

void project(std::span<double> x, std::span<const Bounds> bounds) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], bounds[i].lower, bounds[i].upper);
}

OptimizerResult nelder_mead(const ScalarFunction& f, std::vector<double> x0, std::span<const Bounds> bounds,
                            int max_iterations, double relative_tolerance) {
  const std::size_t n = x0.size();
  project(x0, bounds);
  if (n == 0) return {x0, f(x0), 0, true};

  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 0.5 / dn;
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& v = simplex[i + 1];
    const double step = x0[i] != 0.0 ? 0.05 * std::fabs(x0[i]) : 0.00025;
    v[i] = std::clamp(x0[i] + step, bounds[i].lower, bounds[i].upper);
    if (v[i] == x0[i]) v[i] = std::clamp(x0[i] - step, bounds[i].lower, bounds[i].upper);
  }
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), second(n);
  auto point_along = [&](double t, const std::vector<double>& from, std::vector<double>& out) {
    // out = centroid + t * (from - centroid)
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (from[j] - centroid[j]);
    project(out, bounds);
  };

  int iteration = 0;
  bool converged = false;
  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    const double spread = values[worst] - values[best];
    double diameter = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(simplex[best][j]));
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) diameter = std::max(diameter, std::fabs(simplex[i][j] - simplex[best][j]));
    }
    if (spread <= relative_tolerance * std::fabs(values[best]) + 1e-300 || diameter <= 1e-13 * scale) {
      converged = true;
      break;
    }
    if (iteration >= max_iterations) break;
    ++iteration;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& v = simplex[order[k]];
      for (std::size_t j = 0; j < n; ++j) centroid[j] += v[j];
    }
    for (auto& c : centroid) c /= dn;

    point_along(-reflect, simplex[worst], trial);
    const double f_reflect = f(trial);
    if (f_reflect < values[best]) {
      point_along(-reflect * expand, simplex[worst], second);
      const double f_expand = f(second);
      if (f_expand < f_reflect) {
        simplex[worst] = second;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    if (f_reflect < values[worst]) {
      point_along(-reflect * contract, simplex[worst], second);
      const double f_contract = f(second);
      if (f_contract <= f_reflect) {
        simplex[worst] = second;
        values[worst] = f_contract;
        continue;
      }
    } else {
      point_along(contract, simplex[worst], second);
      const double f_contract = f(second);
      if (f_contract < values[worst]) {
        simplex[worst] = second;
        values[worst] = f_contract;
        continue;
      }
    }
    const std::vector<double> anchor = simplex[best];
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) simplex[i][j] = anchor[j] + shrink * (simplex[i][j] - anchor[j]);
      project(simplex[i], bounds);
      values[i] = f(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], iteration, converged};
}

}  // namespace nrvqa::detail
