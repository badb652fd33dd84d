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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "nrvqa/coefficients_io.h"
#include "nrvqa/error.h"
#include "synthetic.h"

namespace nrvqa {
namespace {

namespace fs = std::filesystem;

TEST(CoefficientsJson, RoundTripEveryModel) {
  for (const ModelId id : known_models()) {
    const auto set = testing::perturbed(default_coefficients(id), 0.3, 17);
    const auto back = coefficients_from_json(nlohmann::json::parse(to_json(set).dump()));
    EXPECT_EQ(to_vector(back), to_vector(set)) << model_name(id);
    EXPECT_EQ(model_of(back), id);
  }
}

TEST(CoefficientsJson, NamesFollowDeclaredOrder) {
  const auto j = to_json(default_coefficients(ModelId::g1070));
  EXPECT_EQ(j.at("model"), "g1070");
  EXPECT_EQ(j.at("coefficients").size(), 8u);
  EXPECT_TRUE(j.at("coefficients").contains("a1"));
  EXPECT_TRUE(j.at("coefficients").contains("a8"));
}

TEST(CoefficientsJson, StrictSchema) {
  auto good = to_json(default_coefficients(ModelId::joskowicz));

  auto missing = good;
  missing["coefficients"].erase("c3");
  try {
    coefficients_from_json(missing);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.column(), std::optional<std::string>("c3"));
  }

  auto extra = good;
  extra["coefficients"]["c7"] = 1.0;
  EXPECT_THROW(coefficients_from_json(extra), SchemaError);

  auto text = good;
  text["coefficients"]["c1"] = "1.0";
  EXPECT_THROW(coefficients_from_json(text), SchemaError);

  auto unknown = good;
  unknown["model"] = "vqm";
  EXPECT_THROW(coefficients_from_json(unknown), UnknownModel);

  EXPECT_THROW(coefficients_from_json(nlohmann::json::array()), SchemaError);
  EXPECT_THROW(coefficients_from_json({{"model", "g1070"}}), SchemaError);
}

TEST(CoefficientsJson, BundleRejectsDuplicates) {
  std::vector<CoefficientSet> sets = {default_coefficients(ModelId::ries), default_coefficients(ModelId::ries)};
  EXPECT_THROW(coefficient_sets_from_json(bundle_to_json(sets)), SchemaError);
}

TEST(CoefficientsJson, SingleSetIsAOneElementBundle) {
  const auto sets = coefficient_sets_from_json(to_json(default_coefficients(ModelId::takagi)));
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(model_of(sets[0]), ModelId::takagi);
}

TEST(CoefficientsFile, LoadSelectsModel) {
  const fs::path path = fs::temp_directory_path() / "nrvqa_coefficients_test.json";
  {
    std::ofstream out(path);
    out << bundle_to_json(default_coefficient_bundle()).dump();
  }
  EXPECT_EQ(model_of(load_coefficients(path, ModelId::uves_mode1)), ModelId::uves_mode1);
  {
    std::ofstream out(path);
    out << to_json(default_coefficients(ModelId::g1070)).dump();
  }
  EXPECT_THROW(load_coefficients(path, ModelId::ries), SchemaError);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  EXPECT_THROW(load_coefficient_sets(path), SchemaError);
  fs::remove(path);
  EXPECT_THROW(load_coefficient_sets(path), InvalidArgument);
}

TEST(CoefficientsFile, ShippedDataMatchesLibraryDefaults) {
  const auto sets = load_coefficient_sets(NRVQA_DEFAULT_COEFFICIENTS);
  const auto defaults = default_coefficient_bundle();
  ASSERT_EQ(sets.size(), defaults.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    EXPECT_EQ(model_of(sets[i]), model_of(defaults[i]));
    EXPECT_EQ(to_vector(sets[i]), to_vector(defaults[i])) << model_name(model_of(defaults[i]));
  }
}

TEST(PredictionJson, CarriesBreakdownAndWarnings) {
  Prediction p;
  p.model = ModelId::ries;
  p.mos = 3.5;
  p.native_scale_value = 3.5;
  p.breakdown = {{"Qv", 3.5}};
  p.warnings = {"content_class imputed"};
  const auto j = to_json(p);
  EXPECT_EQ(j.at("model"), "ries");
  EXPECT_EQ(j.at("breakdown").at("Qv"), 3.5);
  EXPECT_EQ(j.at("warnings").size(), 1u);
}

}  // namespace
}  // namespace nrvqa
