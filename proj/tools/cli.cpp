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

#include "cli.h"

#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "io/csv.h"
#include "nrvqa/bitstream.h"
#include "nrvqa/coefficients_io.h"
#include "nrvqa/dataset.h"
#include "nrvqa/error.h"
#include "nrvqa/evaluation.h"
#include "nrvqa/features.h"
#include "nrvqa/features_io.h"
#include "nrvqa/fitting.h"
#include "nrvqa/models.h"

#ifndef NRVQA_VERSION
#define NRVQA_VERSION "0.0.0"
#endif

namespace nrvqa::cli {

namespace {

namespace fs = std::filesystem;

// Artifacts are staged in memory and written only after the command
// succeeded; each file goes through a temporary sibling and a rename.
class Outputs {
 public:
  void add(fs::path path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }

  void commit() {
    std::vector<fs::path> temps;
    try {
      for (const auto& [path, content] : files_) {
        fs::path temp = path;
        temp += ".tmp" + std::to_string(::getpid());
        temps.push_back(temp);
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) throw InvalidArgument("cannot write " + path.string());
      }
      for (std::size_t i = 0; i < files_.size(); ++i) fs::rename(temps[i], files_[i].first);
    } catch (...) {
      std::error_code ec;
      for (const auto& t : temps) fs::remove(t, ec);
      throw;
    }
  }

 private:
  std::vector<std::pair<fs::path, std::string>> files_;
};

fs::path with_suffix(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p += suffix;
  return p;
}

std::string provenance_line(const RunConfig& config) {
  return "# nrvqa " NRVQA_VERSION " " + config_json(config).dump() + "\n";
}

nlohmann::json with_config(nlohmann::json payload, const RunConfig& config) {
  payload["config"] = config_json(config);
  return payload;
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

const fs::path& require_path(const std::optional<fs::path>& p, const char* flag) {
  if (!p) throw InvalidArgument(std::string("missing required option ") + flag);
  return *p;
}

ModelId single_model(const RunConfig& config) {
  if (config.models.size() != 1) throw InvalidArgument("exactly one --model is required");
  return require_model_id(config.models.front());
}

std::optional<CoefficientSet> optional_coefficients(const RunConfig& config, ModelId model) {
  if (!config.coefficients) return std::nullopt;
  return load_coefficients(*config.coefficients, model);
}

std::vector<CoefficientSet> optional_coefficient_sets(const RunConfig& config) {
  if (!config.coefficients) return {};
  return load_coefficient_sets(*config.coefficients);
}

void run_extract(const RunConfig& config, Outputs& outputs) {
  const auto& path = require_path(config.bitstream, "--bitstream");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open bitstream " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto result = h264::extract_frames(bytes);

  std::ostringstream csv;
  csv << provenance_line(config);
  write_frame_stats_csv(csv, result.frames);

  nlohmann::json meta = h264::metadata_json(result);
  if (const auto fps = result.sps.framerate(); fps && !result.frames.empty()) {
    const double seconds = static_cast<double>(result.frames.size()) / *fps;
    const double kbps = static_cast<double>(result.total_bytes) * 8.0 / 1000.0 / seconds;
    meta["features"] = to_json(aggregate_features(result.frames, *fps, kbps, result.sps.width_px,
                                                  result.sps.height_px));
  } else {
    meta["features"] = nullptr;
  }
  outputs.add(config.out, csv.str());
  outputs.add(with_suffix(config.out, ".meta.json"), json_text(with_config(meta, config)));
}

void run_predict(const RunConfig& config, Outputs& outputs) {
  const Dataset dataset = load_dataset(require_path(config.dataset, "--dataset"));
  const ModelId model = single_model(config);
  const CoefficientSet k = optional_coefficients(config, model).value_or(default_coefficients(model));

  struct Row {
    std::string sequence_id;
    std::optional<Prediction> prediction;
    std::string error_kind;
    std::string error;
  };
  std::vector<Row> rows;
  for (const auto& r : dataset.rows) {
    Row row{r.sequence_id(), std::nullopt, {}, {}};
    try {
      row.prediction = predict(k, r.features, r.display);
    } catch (const Error& e) {
      row.error_kind = e.kind();
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }

  if (config.format == Format::json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json j = {{"sequence_id", row.sequence_id}};
      if (row.prediction) j["prediction"] = to_json(*row.prediction);
      else j["error"] = {{"kind", row.error_kind}, {"message", row.error}};
      list.push_back(j);
    }
    outputs.add(config.out, json_text(with_config({{"coefficients", to_json(k)}, {"predictions", list}}, config)));
    return;
  }

  // Breakdown columns are fixed per model; take the names from any success.
  std::vector<std::string> terms;
  for (const auto& row : rows) {
    if (!row.prediction) continue;
    for (const auto& t : row.prediction->breakdown) terms.push_back(t.name);
    break;
  }
  std::ostringstream csv;
  csv << provenance_line(config);
  std::vector<std::string> header = {"sequence_id", "model", "mos", "native_scale_value"};
  header.insert(header.end(), terms.begin(), terms.end());
  header.insert(header.end(), {"warnings", "error"});
  auto write_row = [&csv](const std::vector<std::string>& cells) { io::write_csv_row(csv, cells); };
  write_row(header);
  const std::string name(model_name(model));
  for (const auto& row : rows) {
    std::vector<std::string> cells = {row.sequence_id, name};
    if (row.prediction) {
      const auto& p = *row.prediction;
      cells.push_back(io::format_double(p.mos));
      cells.push_back(io::format_double(p.native_scale_value));
      for (const auto& t : p.breakdown) cells.push_back(io::format_double(t.value));
      std::string warnings;
      for (const auto& w : p.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
      cells.push_back(warnings);
      cells.emplace_back();
    } else {
      cells.insert(cells.end(), 2 + terms.size() + 1, std::string());
      cells.push_back(row.error);
    }
    write_row(cells);
  }
  outputs.add(config.out, csv.str());
}

void run_fit(const RunConfig& config, Outputs& outputs) {
  if (config.format != Format::json) throw InvalidArgument("fit writes JSON; use --format json");
  const Dataset dataset = load_dataset(require_path(config.dataset, "--dataset"));
  const ModelId model = single_model(config);
  FitOptions options;
  options.seed = config.seed;
  const FitResult result = fit(model, dataset, optional_coefficients(config, model), options);
  outputs.add(config.out, json_text(with_config(to_json(result), config)));
}

EvalOptions eval_options(const RunConfig& config) {
  EvalOptions options;
  options.fit.seed = config.seed;
  return options;
}

void run_evaluate(const RunConfig& config, Outputs& outputs) {
  const Dataset dataset = load_dataset(require_path(config.dataset, "--dataset"));
  const ModelId model = single_model(config);
  EvalOptions options = eval_options(config);
  options.init = optional_coefficients(config, model);
  const EvalReport report = cross_validate(model, dataset, config.folds, config.seed, options);
  if (config.format == Format::json) {
    outputs.add(config.out, json_text(with_config(to_json(report), config)));
    return;
  }
  std::ostringstream metrics;
  metrics << provenance_line(config);
  write_metrics_csv(metrics, std::span<const EvalReport>(&report, 1));
  std::ostringstream residuals;
  residuals << provenance_line(config);
  write_residuals_csv(residuals, report);
  outputs.add(config.out, metrics.str());
  outputs.add(with_suffix(config.out, ".residuals.csv"), residuals.str());
}

void run_compare(const RunConfig& config, Outputs& outputs) {
  const Dataset dataset = load_dataset(require_path(config.dataset, "--dataset"));
  std::vector<ModelId> models;
  if (config.models.empty()) {
    models.assign(comparison_models().begin(), comparison_models().end());
  } else {
    for (const auto& m : config.models) models.push_back(require_model_id(m));
  }
  const Comparison comparison =
      compare_models(models, dataset, config.folds, config.seed, eval_options(config), optional_coefficient_sets(config));
  if (config.format == Format::json) {
    outputs.add(config.out, json_text(with_config(to_json(comparison), config)));
    return;
  }
  std::ostringstream metrics;
  metrics << provenance_line(config);
  write_metrics_csv(metrics, comparison.reports);
  std::ostringstream residuals;
  residuals << provenance_line(config);
  write_comparison_residuals_csv(residuals, comparison.reports);
  outputs.add(config.out, metrics.str());
  outputs.add(with_suffix(config.out, ".residuals.csv"), residuals.str());
}

nlohmann::json error_record(const char* kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::extract: return "extract";
    case Command::predict: return "predict";
    case Command::fit: return "fit";
    case Command::evaluate: return "evaluate";
    case Command::compare: return "compare";
  }
  return "unknown";
}

std::string_view to_string(Format format) { return format == Format::csv ? "csv" : "json"; }

nlohmann::json config_json(const RunConfig& c) {
  auto path_or_null = [](const std::optional<fs::path>& p) { return p ? nlohmann::json(p->string()) : nlohmann::json(); };
  return {{"command", to_string(c.command)},
          {"dataset", path_or_null(c.dataset)},
          {"bitstream", path_or_null(c.bitstream)},
          {"coefficients", path_or_null(c.coefficients)},
          {"models", c.models},
          {"folds", c.folds},
          {"seed", c.seed},
          {"out", c.out.string()},
          {"format", to_string(c.format)},
          {"version", NRVQA_VERSION}};
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    if (config.out.empty()) throw InvalidArgument("missing required option --out");
    Outputs outputs;
    switch (config.command) {
      case Command::extract: run_extract(config, outputs); break;
      case Command::predict: run_predict(config, outputs); break;
      case Command::fit: run_fit(config, outputs); break;
      case Command::evaluate: run_evaluate(config, outputs); break;
      case Command::compare: run_compare(config, outputs); break;
    }
    outputs.commit();
    return kExitOk;
  } catch (const SchemaError& e) {
    nlohmann::json record = error_record(e.kind(), e.what());
    if (e.row()) record["error"]["row"] = *e.row();
    if (e.column()) record["error"]["column"] = *e.column();
    err << record.dump() << '\n';
  } catch (const UnknownModel& e) {
    nlohmann::json record = error_record(e.kind(), e.what());
    std::vector<std::string> known;
    for (const ModelId id : known_models()) known.emplace_back(model_name(id));
    record["error"]["known_models"] = known;
    err << record.dump() << '\n';
  } catch (const Error& e) {
    err << error_record(e.kind(), e.what()).dump() << '\n';
  } catch (const std::exception& e) {
    err << error_record("internal_error", e.what()).dump() << '\n';
  }
  return kExitFailure;
}

}  // namespace nrvqa::cli
