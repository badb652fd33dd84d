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
#include <memory>

#include <Eigen/Dense>

#include "fitting/optimizers.h"

namespace nrvqa::detail {

namespace {

double sum_of_squares(std::span<const double> r) {
  double s = 0.0;
  for (const double v : r) s += v * v;
  return s;
}

}  // namespace

OptimizerResult levenberg_marquardt(const ResidualFunction& residuals, std::size_t m, std::vector<double> x,
                                    std::span<const Bounds> bounds, int max_iterations) {
  const std::size_t n = x.size();
  project(x, bounds);
  std::vector<double> r(m), r_plus(m), r_minus(m), r_trial(m);
  // std::vector<bool> is packed, so the flags live in a plain array.
  const auto flags = std::make_unique<bool[]>(4 * m);
  const std::span<bool> ok(flags.get(), m);
  const std::span<bool> ok_plus(flags.get() + m, m);
  const std::span<bool> ok_minus(flags.get() + 2 * m, m);
  const std::span<bool> ok_trial(flags.get() + 3 * m, m);

  residuals(x, r, ok);
  double sse = sum_of_squares(r);
  if (n == 0 || m == 0) return {x, sse, 0, true};

  Eigen::MatrixXd jacobian(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  std::vector<double> probe(x), trial(n);
  double lambda = -1.0;
  int iteration = 0;
  bool converged = false;
  bool need_jacobian = true;
  Eigen::MatrixXd normal;
  Eigen::VectorXd gradient;

  while (iteration < max_iterations) {
    // Residuals at the rounding level of MOS-scale values.
    if (sse <= static_cast<double>(m) * 1e-26) {
      converged = true;
      break;
    }
    if (need_jacobian) {
      for (std::size_t j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(std::fabs(x[j]), 1e-2);
        probe = x;
        probe[j] = std::min(x[j] + h, bounds[j].upper);
        const double up = probe[j] - x[j];
        residuals(probe, r_plus, ok_plus);
        probe[j] = std::max(x[j] - h, bounds[j].lower);
        const double down = x[j] - probe[j];
        residuals(probe, r_minus, ok_minus);
        for (std::size_t i = 0; i < m; ++i) {
          double d = 0.0;
          if (ok[i]) {
            if (ok_plus[i] && ok_minus[i] && up + down > 0.0) d = (r_plus[i] - r_minus[i]) / (up + down);
            else if (ok_plus[i] && up > 0.0) d = (r_plus[i] - r[i]) / up;
            else if (ok_minus[i] && down > 0.0) d = (r[i] - r_minus[i]) / down;
          }
          jacobian(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
        }
      }
      const Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(m));
      normal = jacobian.transpose() * jacobian;
      gradient = jacobian.transpose() * rv;
      if (lambda < 0.0) lambda = 1e-3 * std::max(normal.diagonal().maxCoeff(), 1e-300);
      need_jacobian = false;
    }
    ++iteration;

    Eigen::MatrixXd damped = normal;
    const double floor = 1e-12 * std::max(normal.diagonal().maxCoeff(), 1e-300);
    for (Eigen::Index j = 0; j < damped.rows(); ++j) damped(j, j) += lambda * std::max(normal(j, j), floor);
    const Eigen::VectorXd step = damped.ldlt().solve(-gradient);
    if (!step.allFinite()) break;

    double step_norm = 0.0;
    double x_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      trial[j] = x[j] + step(static_cast<Eigen::Index>(j));
      step_norm = std::max(step_norm, std::fabs(step(static_cast<Eigen::Index>(j))));
      x_norm = std::max(x_norm, std::fabs(x[j]));
    }
    project(trial, bounds);
    residuals(trial, r_trial, ok_trial);
    const double sse_trial = sum_of_squares(r_trial);
    if (std::isfinite(sse_trial) && sse_trial < sse) {
      const double decrease = sse - sse_trial;
      x = trial;
      r.swap(r_trial);
      std::copy(ok_trial.begin(), ok_trial.end(), ok.begin());
      sse = sse_trial;
      lambda = std::max(lambda * 0.3, 1e-15);
      need_jacobian = true;
      if (decrease <= 1e-12 * sse_trial || step_norm <= 1e-15 * (x_norm + 1e-15)) {
        converged = true;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e16 || step_norm <= 1e-15 * (x_norm + 1e-15)) {
        converged = true;  // no descent direction left at this resolution
        break;
      }
    }
  }
  if (sse <= static_cast<double>(m) * 1e-26) converged = true;
  return {x, sse, iteration, converged};
}

}  // namespace nrvqa::detail
