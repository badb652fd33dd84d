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
#include <array>
#include <string>

#include "nrvqa/error.h"
#include "nrvqa/models.h"

namespace nrvqa {

namespace {

struct ModelEntry {
  ModelId id;
  std::string_view name;
};

constexpr std::array<ModelEntry, 10> kModels = {{
    {ModelId::g1070, "g1070"},
    {ModelId::p1201_1, "p1201_1"},
    {ModelId::p1201_2, "p1201_2"},
    {ModelId::p1203_mode3, "p1203_mode3"},
    {ModelId::yamagishi, "yamagishi"},
    {ModelId::ries, "ries"},
    {ModelId::joskowicz, "joskowicz"},
    {ModelId::takagi, "takagi"},
    {ModelId::uves_mode1, "uves_mode1"},
    {ModelId::uves_model1_1, "uves_model1_1"},
}};

constexpr std::array<ModelId, 9> kComparison = {ModelId::g1070,     ModelId::p1201_1, ModelId::p1201_2,
                                                ModelId::p1203_mode3, ModelId::yamagishi, ModelId::ries,
                                                ModelId::joskowicz, ModelId::takagi,  ModelId::uves_mode1};

constexpr std::array<ModelId, 10> kKnown = {ModelId::g1070,      ModelId::p1201_1,   ModelId::p1201_2,
                                            ModelId::p1203_mode3, ModelId::yamagishi, ModelId::ries,
                                            ModelId::joskowicz,  ModelId::takagi,    ModelId::uves_mode1,
                                            ModelId::uves_model1_1};

constexpr std::array<std::string_view, 8> kG1070Names = {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"};
constexpr std::array<std::string_view, 4> kCNames4 = {"c1", "c2", "c3", "c4"};
constexpr std::array<std::string_view, 12> kP1203Names = {"q1", "q2", "q3", "u1", "u2", "t1",
                                                          "t2", "t3", "h1", "h2", "h3", "h4"};
constexpr std::array<std::string_view, 7> kCNames7 = {"c1", "c2", "c3", "c4", "c5", "c6", "c7"};
constexpr std::array<std::string_view, 25> kRiesNames = {
    "class0_c1", "class0_c2", "class0_c3", "class0_c4", "class0_c5",  //
    "class1_c1", "class1_c2", "class1_c3", "class1_c4", "class1_c5",  //
    "class2_c1", "class2_c2", "class2_c3", "class2_c4", "class2_c5",  //
    "class3_c1", "class3_c2", "class3_c3", "class3_c4", "class3_c5",  //
    "class4_c1", "class4_c2", "class4_c3", "class4_c4", "class4_c5"};
constexpr std::array<std::string_view, 6> kCNames6 = {"c1", "c2", "c3", "c4", "c5", "c6"};
constexpr std::array<std::string_view, 13> kTakagiNames = {"a1", "a2", "a3", "b1", "b2", "b3", "c1",
                                                           "c2", "c3", "d1", "d2", "d3", "e"};
constexpr std::array<std::string_view, 17> kUvesNames = {"n1",  "n2",  "n3",  "n4",  "n5",  "n6",
                                                         "n7",  "n8",  "n9",  "n10", "n11", "n12",
                                                         "n13", "n14", "n15", "n16", "n17"};

// uVES coding sub-model starting values, shared by both uVES variants.
constexpr std::array<double, 11> kUvesCodingDefaults = {-1.0, 0.05, 5.0,  -0.2, 2.0, 3.0,
                                                        1.0,  0.05, 0.01, 0.3,  0.01};

template <typename K>
K from_values(std::span<const double> values) {
  K k;
  std::copy(values.begin(), values.end(), k.values.begin());
  return k;
}

}  // namespace

std::string_view model_name(ModelId id) {
  for (const auto& m : kModels) {
    if (m.id == id) return m.name;
  }
  throw InvalidArgument("unknown ModelId value");
}

std::optional<ModelId> parse_model_id(std::string_view name) {
  for (const auto& m : kModels) {
    if (m.name == name) return m.id;
  }
  return std::nullopt;
}

ModelId require_model_id(std::string_view name) {
  if (auto id = parse_model_id(name)) return *id;
  std::string known;
  for (const auto& m : kModels) {
    if (!known.empty()) known += ", ";
    known += m.name;
  }
  throw UnknownModel("unknown model '" + std::string(name) + "'; known models: " + known);
}

std::span<const ModelId> comparison_models() { return kComparison; }
std::span<const ModelId> known_models() { return kKnown; }

ModelId model_of(const CoefficientSet& set) {
  return std::visit([](const auto& k) { return std::remove_cvref_t<decltype(k)>::model; }, set);
}

std::span<const std::string_view> coefficient_names(ModelId id) {
  switch (id) {
    case ModelId::g1070: return kG1070Names;
    case ModelId::p1201_1:
    case ModelId::p1201_2: return kCNames4;
    case ModelId::p1203_mode3: return kP1203Names;
    case ModelId::yamagishi: return kCNames7;
    case ModelId::ries: return kRiesNames;
    case ModelId::joskowicz: return kCNames6;
    case ModelId::takagi: return kTakagiNames;
    case ModelId::uves_mode1: return kUvesNames;
    case ModelId::uves_model1_1: return std::span<const std::string_view>(kUvesNames).first(11);
  }
  throw InvalidArgument("unknown ModelId value");
}

std::size_t coefficient_count(ModelId id) { return coefficient_names(id).size(); }

std::vector<double> to_vector(const CoefficientSet& set) {
  return std::visit([](const auto& k) { return std::vector<double>(k.values.begin(), k.values.end()); }, set);
}

CoefficientSet make_coefficients(ModelId id, std::span<const double> values) {
  const std::size_t expected = coefficient_count(id);
  if (values.size() != expected) {
    throw InvalidArgument(std::string(model_name(id)) + " takes " + std::to_string(expected) + " coefficients, got " +
                          std::to_string(values.size()));
  }
  switch (id) {
    case ModelId::g1070: return from_values<G1070Coefficients>(values);
    case ModelId::p1201_1: return from_values<P1201_1Coefficients>(values);
    case ModelId::p1201_2: return from_values<P1201_2Coefficients>(values);
    case ModelId::p1203_mode3: return from_values<P1203Coefficients>(values);
    case ModelId::yamagishi: return from_values<YamagishiCoefficients>(values);
    case ModelId::ries: return from_values<RiesCoefficients>(values);
    case ModelId::joskowicz: return from_values<JoskowiczCoefficients>(values);
    case ModelId::takagi: return from_values<TakagiCoefficients>(values);
    case ModelId::uves_mode1: return from_values<UvesCoefficients>(values);
    case ModelId::uves_model1_1: return from_values<UvesCodingCoefficients>(values);
  }
  throw InvalidArgument("unknown ModelId value");
}

CoefficientSet default_coefficients(ModelId id) {
  switch (id) {
    case ModelId::g1070:
      return G1070Coefficients{{3.759, 3.759, 184.1, 1.161, 1.431, 0.02228, 1.446, 0.0003881}};
    case ModelId::p1201_1:
      return P1201_1Coefficients{{0.05, 0.02, 1.0, 3.0}};
    case ModelId::p1201_2:
      return P1201_2Coefficients{{80.0, -0.05, 5.0, 5.0}};
    case ModelId::p1203_mode3:
      return P1203Coefficients{{4.66, -0.07, 4.06, 72.61, 0.32, 30.98, 1.29, 64.65, 0.0, 1.0, 0.0, 0.0}};
    case ModelId::yamagishi:
      return YamagishiCoefficients{{10.0, 0.01, 0.6, 0.0002, 4.0, 600.0, 1.3}};
    case ModelId::ries: {
      RiesCoefficients k;
      for (int cls = 0; cls < kRiesClasses; ++cls) {
        const std::size_t row = static_cast<std::size_t>(cls) * kRiesRowSize;
        k.values[row + 0] = 3.2 - 0.15 * cls;
        k.values[row + 1] = 5e-5;
        k.values[row + 2] = -250.0 - 50.0 * cls;
        k.values[row + 3] = 0.02;
        k.values[row + 4] = -5.0;
      }
      return k;
    }
    case ModelId::joskowicz:
      return JoskowiczCoefficients{{50.0, 0.8, 300.0, 0.1, 0.5, 1.0}};
    case ModelId::takagi:
      return TakagiCoefficients{{0.0, 1.0, 0.1, 0.0, 1.0, 0.1, 0.0, 0.5, 0.0, -0.3, 28.0, 3.6, 2.0}};
    case ModelId::uves_mode1: {
      UvesCoefficients k;
      std::copy(kUvesCodingDefaults.begin(), kUvesCodingDefaults.end(), k.values.begin());
      const std::array<double, 6> display = {1.0, 5.0, 5.0, 300.0, -0.8, 2.0};
      std::copy(display.begin(), display.end(), k.values.begin() + kUvesCodingDefaults.size());
      return k;
    }
    case ModelId::uves_model1_1: {
      UvesCodingCoefficients k;
      std::copy(kUvesCodingDefaults.begin(), kUvesCodingDefaults.end(), k.values.begin());
      return k;
    }
  }
  throw InvalidArgument("unknown ModelId value");
}

}  // namespace nrvqa
