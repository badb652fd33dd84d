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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.h"

int main(int argc, char** argv) {
  using nrvqa::cli::Command;
  using nrvqa::cli::Format;

  nrvqa::cli::RunConfig config;
  CLI::App app{"No-reference parametric video quality estimation"};
  app.set_version_flag("--version", std::string(NRVQA_VERSION));
  app.require_subcommand(1);

  std::string dataset, bitstream, coefficients, out;
  std::string format = "csv";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Output path")->required();
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_dataset = [&](CLI::App* sub) {
    sub->add_option("--dataset", dataset, "Dataset CSV")->required()->check(CLI::ExistingFile);
  };
  auto add_models = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--model", config.models, "Model id(s), comma separated")->delimiter(',');
    if (required) opt->required();
  };
  auto add_coefficients = [&](CLI::App* sub) {
    sub->add_option("--coefficients", coefficients, "Coefficient JSON")->check(CLI::ExistingFile);
  };
  auto add_cv = [&](CLI::App* sub) {
    sub->add_option("--folds", config.folds, "Number of folds")->check(CLI::Range(2, 1000));
    sub->add_option("--seed", config.seed, "Random seed");
  };

  auto* extract = app.add_subcommand("extract", "Per-frame statistics from an H.264 Annex-B stream");
  extract->add_option("--bitstream", bitstream, "H.264 Annex-B file")->required()->check(CLI::ExistingFile);
  add_common(extract);

  auto* predict = app.add_subcommand("predict", "Predict MOS for every dataset row");
  add_dataset(predict);
  add_models(predict, true);
  add_coefficients(predict);
  add_common(predict);

  auto* fit = app.add_subcommand("fit", "Fit model coefficients to a dataset");
  add_dataset(fit);
  add_models(fit, true);
  add_coefficients(fit);
  fit->add_option("--seed", config.seed, "Random seed");
  add_common(fit);

  auto* evaluate = app.add_subcommand("evaluate", "K-fold cross-validation of one model");
  add_dataset(evaluate);
  add_models(evaluate, true);
  add_coefficients(evaluate);
  add_cv(evaluate);
  add_common(evaluate);

  auto* compare = app.add_subcommand("compare", "Cross-validate several models on shared folds");
  add_dataset(compare);
  add_models(compare, false);
  add_coefficients(compare);
  add_cv(compare);
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nrvqa::cli::kExitUsage;
  }

  if (*extract) config.command = Command::extract;
  else if (*predict) config.command = Command::predict;
  else if (*fit) config.command = Command::fit;
  else if (*evaluate) config.command = Command::evaluate;
  else config.command = Command::compare;
  if (*fit && format == "csv" && fit->count("--format") == 0) format = "json";

  if (!dataset.empty()) config.dataset = dataset;
  if (!bitstream.empty()) config.bitstream = bitstream;
  if (!coefficients.empty()) config.coefficients = coefficients;
  config.out = out;
  config.format = format == "json" ? Format::json : Format::csv;
  return nrvqa::cli::run(config, std::cerr);
}
