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
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "common/random.h"
#include "io/csv.h"
#include "nrvqa/coefficients_io.h"
#include "nrvqa/error.h"
#include "nrvqa/evaluation.h"

namespace nrvqa {

namespace {

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[detail::uniform_index(rng, i)]);
  }
}

// SplitMix64 finaliser; decorrelates per-fold fit seeds from the plan seed.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::optional<double> mean_of(const std::vector<FoldMetrics>& folds, std::optional<double> FoldMetrics::*field,
                              std::size_t* count = nullptr) {
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& f : folds) {
    if (const auto& v = f.*field) {
      total += *v;
      ++n;
    }
  }
  if (count) *count = n;
  if (n == 0) return std::nullopt;
  return total / static_cast<double>(n);
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

std::string optional_cell(const std::optional<double>& v) { return v ? io::format_double(*v) : std::string(); }

std::string predicted_cell(double v) { return std::isnan(v) ? std::string() : io::format_double(v); }

}  // namespace

std::map<std::string, int> FoldPlan::assignments() const {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < sequence_ids.size(); ++i) out.emplace(sequence_ids[i], fold_of[i]);
  return out;
}

std::vector<std::size_t> FoldPlan::members(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::complement(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) out.push_back(i);
  }
  return out;
}

FoldPlan make_folds(const Dataset& dataset, int k, std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("make_folds: k must be at least 2");
  if (static_cast<std::size_t>(k) > dataset.size()) {
    throw InvalidArgument("make_folds: k = " + std::to_string(k) + " exceeds dataset size " +
                          std::to_string(dataset.size()));
  }
  dataset.validate();

  // Sources in order of first appearance, each with its rows.
  std::vector<std::vector<std::size_t>> sources;
  std::unordered_map<std::string, std::size_t> source_index;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& id = dataset.rows[i].subjective.source_id;
    const auto [it, inserted] = source_index.emplace(id, sources.size());
    if (inserted) sources.emplace_back();
    sources[it->second].push_back(i);
  }

  std::mt19937_64 rng(seed);
  shuffle(sources, rng);
  std::vector<std::size_t> order;
  order.reserve(dataset.size());
  for (auto& members : sources) {
    shuffle(members, rng);
    order.insert(order.end(), members.begin(), members.end());
  }

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.fold_of.assign(dataset.size(), 0);
  for (std::size_t p = 0; p < order.size(); ++p) plan.fold_of[order[p]] = static_cast<int>(p % static_cast<std::size_t>(k));
  plan.sequence_ids.reserve(dataset.size());
  for (const auto& r : dataset.rows) plan.sequence_ids.push_back(r.sequence_id());
  return plan;
}

EvalReport cross_validate(ModelId model, const Dataset& dataset, const FoldPlan& plan, const EvalOptions& options) {
  if (dataset.empty()) throw InvalidArgument("cross_validate: dataset is empty");
  dataset.validate();
  if (plan.fold_of.size() != dataset.size()) throw InvalidArgument("cross_validate: fold plan does not match dataset");
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (plan.sequence_ids[i] != dataset.rows[i].sequence_id()) {
      throw InvalidArgument("cross_validate: fold plan does not match dataset order");
    }
  }
  if (options.init && model_of(*options.init) != model) {
    throw InvalidArgument("cross_validate: initial coefficients belong to another model");
  }

  EvalReport report;
  report.model = model;
  report.plan = plan;
  report.residuals.resize(dataset.size());
  const std::string name(model_name(model));

  for (int fold = 0; fold < plan.k; ++fold) {
    const auto test_idx = plan.members(fold);
    const auto train_idx = plan.complement(fold);
    if (test_idx.empty() || train_idx.empty()) {
      throw InvalidArgument("cross_validate: fold " + std::to_string(fold) + " leaves an empty train or test set");
    }
    FitOptions fit_options = options.fit;
    fit_options.seed = mix(plan.seed ^ mix(static_cast<std::uint64_t>(fold)));
    FitResult fitted = fit(model, dataset.subset(train_idx), options.init, fit_options);

    FoldMetrics m;
    m.fold = fold;
    m.size = test_idx.size();
    m.fitted_coefficients = fitted.coefficients;
    std::vector<double> mos;
    std::vector<double> predicted;
    std::vector<SubjectiveRecord> subjective;
    for (const auto i : test_idx) {
      const auto& row = dataset.rows[i];
      const auto p = try_predict_mos(fitted.coefficients, row.features, row.display);
      report.residuals[i] = {row.sequence_id(), row.subjective.mos,
                             p ? *p : std::numeric_limits<double>::quiet_NaN(), fold};
      if (!p) {
        ++m.failed_predictions;
        continue;
      }
      mos.push_back(row.subjective.mos);
      predicted.push_back(*p);
      subjective.push_back(row.subjective);
    }
    if (m.failed_predictions > 0) {
      report.warnings.push_back(name + " fold " + std::to_string(fold) + ": " +
                                std::to_string(m.failed_predictions) +
                                " held-out rows outside the fitted model's domain; excluded from metrics");
    }
    if (!mos.empty()) {
      m.rmse = rmse(mos, predicted);
      m.outlier_ratio = outlier_ratio(subjective, predicted, options.outlier_threshold);
      m.pcc = try_pcc(mos, predicted);
    }
    if (!m.pcc) {
      report.warnings.push_back(name + " fold " + std::to_string(fold) +
                                ": PCC undefined (fewer than two rows or zero variance); omitted");
    }
    m.fit = std::move(fitted);
    report.per_fold.push_back(std::move(m));
  }

  report.aggregate.pcc = mean_of(report.per_fold, &FoldMetrics::pcc, &report.aggregate.pcc_folds);
  report.aggregate.rmse = mean_of(report.per_fold, &FoldMetrics::rmse);
  report.aggregate.outlier_ratio = mean_of(report.per_fold, &FoldMetrics::outlier_ratio);
  return report;
}

EvalReport cross_validate(ModelId model, const Dataset& dataset, int k, std::uint64_t seed,
                          const EvalOptions& options) {
  return cross_validate(model, dataset, make_folds(dataset, k, seed), options);
}

Comparison compare_models(std::span<const ModelId> models, const Dataset& dataset, int k, std::uint64_t seed,
                          const EvalOptions& options, const std::vector<CoefficientSet>& inits) {
  if (models.empty()) throw InvalidArgument("compare_models: no models given");
  Comparison out;
  out.plan = make_folds(dataset, k, seed);
  for (const ModelId model : models) {
    EvalOptions model_options = options;
    model_options.init.reset();
    for (const auto& init : inits) {
      if (model_of(init) == model) model_options.init = init;
    }
    out.reports.push_back(cross_validate(model, dataset, out.plan, model_options));
  }
  std::stable_sort(out.reports.begin(), out.reports.end(), [](const EvalReport& a, const EvalReport& b) {
    const auto& pa = a.aggregate.pcc;
    const auto& pb = b.aggregate.pcc;
    if (pa && pb) return *pa > *pb;
    return pa.has_value() && !pb.has_value();
  });
  return out;
}

nlohmann::json to_json(const FoldPlan& plan) {
  nlohmann::json assignments = nlohmann::json::object();
  for (std::size_t i = 0; i < plan.sequence_ids.size(); ++i) assignments[plan.sequence_ids[i]] = plan.fold_of[i];
  return {{"k", plan.k}, {"seed", plan.seed}, {"assignments", assignments}};
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : r.per_fold) {
    folds.push_back({{"fold", f.fold},
                     {"size", f.size},
                     {"failed_predictions", f.failed_predictions},
                     {"pcc", optional_json(f.pcc)},
                     {"rmse", optional_json(f.rmse)},
                     {"outlier_ratio", optional_json(f.outlier_ratio)},
                     {"fitted_coefficients", to_json(f.fitted_coefficients)},
                     {"fit", {{"final_sse", f.fit.final_sse},
                              {"iterations", f.fit.iterations},
                              {"converged", f.fit.converged},
                              {"failed_rows", f.fit.failed_rows}}}});
  }
  nlohmann::json residuals = nlohmann::json::array();
  for (const auto& res : r.residuals) {
    residuals.push_back({{"sequence_id", res.sequence_id},
                         {"mos", res.mos},
                         {"predicted", std::isnan(res.predicted) ? nlohmann::json() : nlohmann::json(res.predicted)},
                         {"fold", res.fold}});
  }
  return {{"model", model_name(r.model)},
          {"folds", to_json(r.plan)},
          {"aggregate",
           {{"pcc", optional_json(r.aggregate.pcc)},
            {"rmse", optional_json(r.aggregate.rmse)},
            {"outlier_ratio", optional_json(r.aggregate.outlier_ratio)},
            {"pcc_folds", r.aggregate.pcc_folds}}},
          {"per_fold", folds},
          {"residuals", residuals},
          {"warnings", r.warnings}};
}

nlohmann::json to_json(const Comparison& c) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : c.reports) reports.push_back(to_json(r));
  return {{"folds", to_json(c.plan)}, {"reports", reports}};
}

void write_metrics_csv(std::ostream& out, std::span<const EvalReport> reports) {
  io::write_csv_row(out, std::vector<std::string>{"model", "PCC", "RMSE", "OR"});
  for (const auto& r : reports) {
    io::write_csv_row(out, std::vector<std::string>{std::string(model_name(r.model)), optional_cell(r.aggregate.pcc),
                                                    optional_cell(r.aggregate.rmse),
                                                    optional_cell(r.aggregate.outlier_ratio)});
  }
}

void write_residuals_csv(std::ostream& out, const EvalReport& report) {
  io::write_csv_row(out, std::vector<std::string>{"sequence_id", "mos", "predicted", "fold"});
  for (const auto& r : report.residuals) {
    io::write_csv_row(out, std::vector<std::string>{r.sequence_id, io::format_double(r.mos),
                                                    predicted_cell(r.predicted), std::to_string(r.fold)});
  }
}

void write_comparison_residuals_csv(std::ostream& out, std::span<const EvalReport> reports) {
  io::write_csv_row(out, std::vector<std::string>{"model", "sequence_id", "mos", "predicted", "fold"});
  for (const auto& report : reports) {
    const std::string name(model_name(report.model));
    for (const auto& r : report.residuals) {
      io::write_csv_row(out, std::vector<std::string>{name, r.sequence_id, io::format_double(r.mos),
                                                      predicted_cell(r.predicted), std::to_string(r.fold)});
    }
  }
}

}  // namespace nrvqa
