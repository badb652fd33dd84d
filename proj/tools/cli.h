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

// Batch front end: extract, predict, fit, evaluate and compare.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nrvqa::cli {

enum class Command { extract, predict, fit, evaluate, compare };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::predict;
  std::optional<std::filesystem::path> dataset;
  std::optional<std::filesystem::path> bitstream;
  std::optional<std::filesystem::path> coefficients;
  std::vector<std::string> models;
  int folds = 5;
  std::uint64_t seed = 42;
  std::filesystem::path out;
  Format format = Format::csv;
};

std::string_view to_string(Command command);
std::string_view to_string(Format format);

// Configuration echoed into every artifact.
nlohmann::json config_json(const RunConfig& config);

// Executes one command. Returns 0 on success; otherwise writes a one-line
// JSON error record to `err`, leaves no output files behind and returns a
// nonzero status.
int run(const RunConfig& config, std::ostream& err);

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

}  // namespace nrvqa::cli
