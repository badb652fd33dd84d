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

// Source-aware k-fold cross-validation and the PCC / RMSE / outlier-ratio
// metric suite.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nrvqa/dataset.h"
#include "nrvqa/fitting.h"
#include "nrvqa/models.h"

namespace nrvqa {

inline constexpr double kDefaultOutlierThreshold = 0.25;

// Pearson correlation. Throws InvalidArgument on length mismatch or fewer
// than two points, DomainError when either input has zero variance.
double pcc(std::span<const double> x, std::span<const double> y);
// As pcc, but nullopt where the correlation is undefined.
std::optional<double> try_pcc(std::span<const double> x, std::span<const double> y);

// Throws InvalidArgument on length mismatch or empty input.
double rmse(std::span<const double> x, std::span<const double> y);

// Fraction of rows with |mos - predicted| above the row's ci95 half-width, or
// above `fallback_threshold` when the row has none. Throws InvalidArgument on
// length mismatch; 0 for empty input.
double outlier_ratio(std::span<const SubjectiveRecord> subjective, std::span<const double> predicted,
                     double fallback_threshold = kDefaultOutlierThreshold);

struct FoldPlan {
  int k = 5;
  std::uint64_t seed = 0;
  std::vector<std::string> sequence_ids;  // dataset order
  std::vector<int> fold_of;               // parallel to sequence_ids

  std::map<std::string, int> assignments() const;
  // Dataset row indices of fold `fold`, ascending.
  std::vector<std::size_t> members(int fold) const;
  std::vector<std::size_t> complement(int fold) const;

  bool operator==(const FoldPlan&) const = default;
};

// Shuffles sources and their members with `seed`, concatenates them and deals
// the sequence round-robin, so fold sizes differ by at most one and a source
// with at most k sequences never repeats within a fold. Throws InvalidArgument
// when k < 2 or k exceeds the dataset size.
FoldPlan make_folds(const Dataset& dataset, int k = 5, std::uint64_t seed = 42);

struct FoldMetrics {
  int fold = 0;
  std::size_t size = 0;
  std::size_t failed_predictions = 0;
  std::optional<double> pcc;  // omitted when undefined
  std::optional<double> rmse;
  std::optional<double> outlier_ratio;
  CoefficientSet fitted_coefficients;
  FitResult fit;
};

struct AggregateMetrics {
  std::optional<double> pcc;
  std::optional<double> rmse;
  std::optional<double> outlier_ratio;
  std::size_t pcc_folds = 0;  // folds contributing to the PCC mean
};

struct ResidualRecord {
  std::string sequence_id;
  double mos = 0.0;
  double predicted = 0.0;  // NaN when the fitted model failed on the row
  int fold = 0;
};

struct EvalReport {
  ModelId model = ModelId::g1070;
  FoldPlan plan;
  std::vector<FoldMetrics> per_fold;
  AggregateMetrics aggregate;
  std::vector<ResidualRecord> residuals;  // dataset order
  std::vector<std::string> warnings;
};

struct EvalOptions {
  FitOptions fit;  // fit.seed is replaced by a per-fold seed derived from the plan seed
  std::optional<CoefficientSet> init;
  double outlier_threshold = kDefaultOutlierThreshold;
};

// Fits on k-1 folds and scores the held-out fold, for every fold.
EvalReport cross_validate(ModelId model, const Dataset& dataset, const FoldPlan& plan,
                          const EvalOptions& options = {});
EvalReport cross_validate(ModelId model, const Dataset& dataset, int k = 5, std::uint64_t seed = 42,
                          const EvalOptions& options = {});

struct Comparison {
  FoldPlan plan;
  // Descending aggregate PCC; undefined PCC last; ties keep input order.
  std::vector<EvalReport> reports;
};

// One shared FoldPlan for every model. `inits` may hold starting
// coefficients for any subset of the models.
Comparison compare_models(std::span<const ModelId> models, const Dataset& dataset, int k = 5,
                          std::uint64_t seed = 42, const EvalOptions& options = {},
                          const std::vector<CoefficientSet>& inits = {});

nlohmann::json to_json(const FoldPlan& plan);
nlohmann::json to_json(const EvalReport& report);
nlohmann::json to_json(const Comparison& comparison);

// model,PCC,RMSE,OR with empty cells for undefined metrics.
void write_metrics_csv(std::ostream& out, std::span<const EvalReport> reports);
// sequence_id,mos,predicted,fold
void write_residuals_csv(std::ostream& out, const EvalReport& report);
// model,sequence_id,mos,predicted,fold
void write_comparison_residuals_csv(std::ostream& out, std::span<const EvalReport> reports);

}  // namespace nrvqa
