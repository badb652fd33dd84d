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

// JSON serialisation of coefficient sets and predictions.
//
// Single set:  {"model": "<id>", "coefficients": {"<name>": value, ...}}
// Bundle:      {"coefficient_sets": [<single set>, ...]}

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "nrvqa/models.h"

namespace nrvqa {

nlohmann::json to_json(const CoefficientSet& set);
// Throws SchemaError on unknown ids, missing or extra names and non-numeric
// or non-finite values; UnknownModel when the id is not recognised.
CoefficientSet coefficients_from_json(const nlohmann::json& j);

nlohmann::json bundle_to_json(const std::vector<CoefficientSet>& sets);
// Accepts a single set or a bundle.
std::vector<CoefficientSet> coefficient_sets_from_json(const nlohmann::json& j);

// Reads a single set or a bundle from disk and returns the entry for `model`.
// Throws SchemaError when the file holds no set for it.
CoefficientSet load_coefficients(const std::filesystem::path& path, ModelId model);
std::vector<CoefficientSet> load_coefficient_sets(const std::filesystem::path& path);

// Defaults for every known model, in known_models() order.
std::vector<CoefficientSet> default_coefficient_bundle();

nlohmann::json to_json(const Prediction& p);

}  // namespace nrvqa
