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

#include "nrvqa/coefficients_io.h"

#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "nrvqa/error.h"

namespace nrvqa {

nlohmann::json to_json(const CoefficientSet& set) {
  const ModelId id = model_of(set);
  const auto names = coefficient_names(id);
  const auto values = to_vector(set);
  nlohmann::json coefficients = nlohmann::json::object();
  for (std::size_t i = 0; i < names.size(); ++i) coefficients[std::string(names[i])] = values[i];
  return {{"model", model_name(id)}, {"coefficients", coefficients}};
}

CoefficientSet coefficients_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("coefficient set must be a JSON object");
  if (!j.contains("model") || !j.at("model").is_string()) {
    throw SchemaError("coefficient set needs a string 'model'", std::nullopt, "model");
  }
  const ModelId id = require_model_id(j.at("model").get<std::string>());
  if (!j.contains("coefficients") || !j.at("coefficients").is_object()) {
    throw SchemaError("coefficient set needs a 'coefficients' object", std::nullopt, "coefficients");
  }
  const auto& obj = j.at("coefficients");
  const auto names = coefficient_names(id);
  std::vector<double> values;
  values.reserve(names.size());
  std::set<std::string, std::less<>> expected;
  for (const auto name : names) {
    const std::string key(name);
    expected.insert(key);
    if (!obj.contains(key)) throw SchemaError("missing coefficient", std::nullopt, key);
    const auto& v = obj.at(key);
    if (!v.is_number()) throw SchemaError("coefficient must be a number", std::nullopt, key);
    const double value = v.get<double>();
    if (!std::isfinite(value)) throw SchemaError("coefficient must be finite", std::nullopt, key);
    values.push_back(value);
  }
  for (const auto& item : obj.items()) {
    if (!expected.contains(item.key())) {
      throw SchemaError("unexpected coefficient for " + std::string(model_name(id)), std::nullopt, item.key());
    }
  }
  return make_coefficients(id, values);
}

nlohmann::json bundle_to_json(const std::vector<CoefficientSet>& sets) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& s : sets) list.push_back(to_json(s));
  return {{"coefficient_sets", list}};
}

std::vector<CoefficientSet> coefficient_sets_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("coefficient_sets")) {
    const auto& list = j.at("coefficient_sets");
    if (!list.is_array()) throw SchemaError("'coefficient_sets' must be an array", std::nullopt, "coefficient_sets");
    std::vector<CoefficientSet> sets;
    std::set<ModelId> seen;
    for (const auto& item : list) {
      sets.push_back(coefficients_from_json(item));
      if (!seen.insert(model_of(sets.back())).second) {
        throw SchemaError("duplicate coefficient set for " + std::string(model_name(model_of(sets.back()))));
      }
    }
    return sets;
  }
  return {coefficients_from_json(j)};
}

std::vector<CoefficientSet> load_coefficient_sets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open coefficient file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": invalid JSON: " + e.what());
  }
  return coefficient_sets_from_json(j);
}

CoefficientSet load_coefficients(const std::filesystem::path& path, ModelId model) {
  for (auto& set : load_coefficient_sets(path)) {
    if (model_of(set) == model) return set;
  }
  throw SchemaError(path.string() + " holds no coefficients for " + std::string(model_name(model)), std::nullopt,
                    "model");
}

std::vector<CoefficientSet> default_coefficient_bundle() {
  std::vector<CoefficientSet> sets;
  for (const ModelId id : known_models()) sets.push_back(default_coefficients(id));
  return sets;
}

nlohmann::json to_json(const Prediction& p) {
  nlohmann::json breakdown = nlohmann::json::object();
  for (const auto& t : p.breakdown) breakdown[t.name] = t.value;
  return {{"model", model_name(p.model)},
          {"mos", p.mos},
          {"native_scale_value", p.native_scale_value},
          {"breakdown", breakdown},
          {"warnings", p.warnings}};
}

}  // namespace nrvqa
