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
#include <random>
#include <string>

#include "common/random.h"
#include "fitting/optimizers.h"
#include "nrvqa/coefficients_io.h"
#include "nrvqa/error.h"
#include "nrvqa/fitting.h"
#include "nrvqa/simd/kernels.h"

namespace nrvqa {

namespace {

const double kPenaltyResidual = std::sqrt(kErrorPenalty);

// A subset of rows whose predictions depend only on `active` coefficients.
struct Block {
  std::vector<const DatasetRow*> rows;
  std::vector<std::size_t> active;
};

class Problem {
 public:
  Problem(ModelId model, std::vector<double> base, const Block& block)
      : model_(model), base_(std::move(base)), block_(block) {
    mos_.reserve(block_.rows.size());
    for (const auto* row : block_.rows) mos_.push_back(row->subjective.mos);
    predicted_.resize(mos_.size());
  }

  std::vector<double> full(std::span<const double> active_values) const {
    std::vector<double> values = base_;
    for (std::size_t i = 0; i < block_.active.size(); ++i) values[block_.active[i]] = active_values[i];
    return values;
  }

  double sse(std::span<const double> active_values) {
    const CoefficientSet set = make_coefficients(model_, full(active_values));
    std::size_t failed = 0;
    for (std::size_t i = 0; i < mos_.size(); ++i) {
      const auto mos = try_predict_mos(set, block_.rows[i]->features, block_.rows[i]->display);
      if (mos) {
        predicted_[i] = *mos;
      } else {
        predicted_[i] = mos_[i];
        ++failed;
      }
    }
    return simd::sum_squared_diff(predicted_, mos_) + kErrorPenalty * static_cast<double>(failed);
  }

  void residuals(std::span<const double> active_values, std::span<double> r, std::span<bool> ok) const {
    const CoefficientSet set = make_coefficients(model_, full(active_values));
    for (std::size_t i = 0; i < mos_.size(); ++i) {
      const auto mos = try_predict_mos(set, block_.rows[i]->features, block_.rows[i]->display);
      ok[i] = mos.has_value();
      r[i] = mos ? mos_[i] - *mos : kPenaltyResidual;
    }
  }

  std::size_t row_count() const { return mos_.size(); }

 private:
  ModelId model_;
  std::vector<double> base_;
  const Block& block_;
  std::vector<double> mos_;
  std::vector<double> predicted_;
};

std::vector<Block> make_blocks(ModelId model, const Dataset& train) {
  const std::size_t n = coefficient_count(model);
  std::vector<const DatasetRow*> all;
  all.reserve(train.size());
  for (const auto& r : train.rows) all.push_back(&r);

  if (model == ModelId::ries) {
    std::vector<Block> blocks;
    for (int cls = 0; cls < kRiesClasses; ++cls) {
      Block b;
      for (const auto* r : all) {
        if (r->features.content_class.value_or(0) == cls) b.rows.push_back(r);
      }
      if (b.rows.empty()) continue;
      for (std::size_t j = 0; j < kRiesRowSize; ++j) b.active.push_back(static_cast<std::size_t>(cls) * kRiesRowSize + j);
      blocks.push_back(std::move(b));
    }
    return blocks;
  }

  Block b;
  b.rows = all;
  std::size_t active = n;
  if (model == ModelId::p1203_mode3) {
    // h1..h4 only affect handheld rows.
    const bool any_handheld = std::any_of(all.begin(), all.end(), [](const DatasetRow* r) {
      return r->display.device_type == DeviceType::handheld;
    });
    if (!any_handheld) active = 8;
  }
  for (std::size_t j = 0; j < active; ++j) b.active.push_back(j);
  return {std::move(b)};
}

struct StartOutcome {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

StartOutcome run_start(Problem& problem, std::vector<double> x, std::span<const Bounds> bounds,
                       const FitOptions& options) {
  detail::project(x, bounds);
  const detail::ScalarFunction f = [&problem](std::span<const double> v) { return problem.sse(v); };
  StartOutcome out{x, f(x), 0, false};

  // Simplex search, restarted from its own optimum while it keeps improving.
  int budget = options.max_iterations;
  while (budget > 0) {
    auto nm = detail::nelder_mead(f, out.x, bounds, budget, options.relative_tolerance);
    budget -= std::max(nm.iterations, 1);
    out.iterations += nm.iterations;
    const bool improved = nm.value < out.value * (1.0 - options.relative_tolerance);
    if (nm.value < out.value) {
      out.x = std::move(nm.x);
      out.value = nm.value;
    }
    out.converged = nm.converged;
    if (!improved) break;
  }

  if (options.polish_iterations > 0) {
    const detail::ResidualFunction res = [&problem](std::span<const double> v, std::span<double> r,
                                                    std::span<bool> ok) { problem.residuals(v, r, ok); };
    auto lm = detail::levenberg_marquardt(res, problem.row_count(), out.x, bounds, options.polish_iterations);
    out.iterations += lm.iterations;
    if (lm.value < out.value) {
      out.x = std::move(lm.x);
      out.value = lm.value;
    }
    out.converged = out.converged || lm.converged;
  }
  return out;
}

std::vector<Bounds> resolve_bounds(ModelId model, const FitOptions& options) {
  const std::size_t n = coefficient_count(model);
  if (!options.bounds) return std::vector<Bounds>(n);
  if (options.bounds->size() != n) {
    throw InvalidArgument("bounds list has " + std::to_string(options.bounds->size()) + " entries; " +
                          std::string(model_name(model)) + " takes " + std::to_string(n));
  }
  for (const auto& b : *options.bounds) {
    if (!(b.lower <= b.upper) || !std::isfinite(b.lower) || !std::isfinite(b.upper)) {
      throw InvalidArgument("each bound needs finite lower <= upper");
    }
  }
  return *options.bounds;
}

}  // namespace

double objective(const CoefficientSet& coefficients, const Dataset& dataset) {
  double sse = 0.0;
  for (const auto& row : dataset.rows) {
    const auto mos = try_predict_mos(coefficients, row.features, row.display);
    if (!mos) {
      sse += kErrorPenalty;
      continue;
    }
    const double d = row.subjective.mos - *mos;
    sse += d * d;
  }
  return sse;
}

double objective(ModelId model, std::span<const double> values, const Dataset& dataset) {
  return objective(make_coefficients(model, values), dataset);
}

FitResult fit(ModelId model, const Dataset& train, const std::optional<CoefficientSet>& init,
              const FitOptions& options) {
  if (train.empty()) throw InvalidArgument("fit: training dataset is empty");
  if (init && model_of(*init) != model) {
    throw InvalidArgument("fit: initial coefficients are for " + std::string(model_name(model_of(*init))) +
                          ", not " + std::string(model_name(model)));
  }
  if (options.starts < 1) throw InvalidArgument("fit: at least one start is required");
  if (options.max_iterations < 0 || options.polish_iterations < 0) {
    throw InvalidArgument("fit: iteration limits must be non-negative");
  }
  if (!(options.relative_tolerance >= 0.0) || !(options.perturbation >= 0.0)) {
    throw InvalidArgument("fit: tolerance and perturbation must be non-negative");
  }

  const auto bounds = resolve_bounds(model, options);
  std::vector<double> values = to_vector(init ? *init : default_coefficients(model));
  detail::project(values, bounds);

  std::mt19937_64 rng(options.seed);
  FitResult result;
  result.converged = true;
  for (const auto& block : make_blocks(model, train)) {
    std::vector<Bounds> active_bounds;
    std::vector<double> start0;
    for (const auto j : block.active) {
      active_bounds.push_back(bounds[j]);
      start0.push_back(values[j]);
    }
    Problem problem(model, values, block);

    StartOutcome best;
    bool have_best = false;
    for (int s = 0; s < options.starts; ++s) {
      std::vector<double> x = start0;
      if (s > 0) {
        for (auto& v : x) {
          const double u = detail::uniform(rng, -options.perturbation, options.perturbation);
          v += u * std::max(std::fabs(v), 1e-3);
        }
      }
      StartOutcome out = run_start(problem, std::move(x), active_bounds, options);
      result.iterations += out.iterations;
      // Strict comparison keeps the lowest start index on ties.
      if (!have_best || out.value < best.value) {
        best = std::move(out);
        have_best = true;
      }
    }
    for (std::size_t i = 0; i < block.active.size(); ++i) values[block.active[i]] = best.x[i];
    result.converged = result.converged && best.converged;
  }

  result.coefficients = make_coefficients(model, values);
  result.per_row_residuals.reserve(train.size());
  for (const auto& row : train.rows) {
    const auto mos = try_predict_mos(result.coefficients, row.features, row.display);
    if (mos) {
      result.per_row_residuals.push_back(row.subjective.mos - *mos);
    } else {
      result.per_row_residuals.push_back(kPenaltyResidual);
      ++result.failed_rows;
    }
  }
  result.final_sse = 0.0;
  for (const double r : result.per_row_residuals) result.final_sse += r * r;
  if (result.failed_rows > 0) result.converged = false;
  return result;
}

nlohmann::json to_json(const FitResult& r) {
  nlohmann::json j = to_json(r.coefficients);
  j["diagnostics"] = {{"final_sse", r.final_sse},
                      {"iterations", r.iterations},
                      {"converged", r.converged},
                      {"failed_rows", r.failed_rows},
                      {"per_row_residuals", r.per_row_residuals}};
  return j;
}

}  // namespace nrvqa
