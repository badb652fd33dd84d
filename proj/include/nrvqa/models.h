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

// Parametric bitstream-layer video quality models. Every predictor is a pure
// function of (StreamFeatures, DisplayParams, coefficients) and returns a MOS
// on the 1..5 ACR scale together with its intermediate terms.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nrvqa/features.h"

namespace nrvqa {

enum class ModelId {
  g1070,
  p1201_1,
  p1201_2,
  p1203_mode3,
  yamagishi,
  ries,
  joskowicz,
  takagi,
  uves_mode1,
  // Coding-quality sub-model of uVES Mode 1 without display terms; used for
  // the display-parameter ablation.
  uves_model1_1,
};

std::string_view model_name(ModelId id);
std::optional<ModelId> parse_model_id(std::string_view name);
// Throws UnknownModel listing the known identifiers.
ModelId require_model_id(std::string_view name);

// The nine comparison models, in table order.
std::span<const ModelId> comparison_models();
// Every identifier accepted by parse_model_id.
std::span<const ModelId> known_models();

template <ModelId M, std::size_t N>
struct Coefficients {
  static constexpr ModelId model = M;
  static constexpr std::size_t size = N;
  std::array<double, N> values{};

  bool operator==(const Coefficients&) const = default;
};

using G1070Coefficients = Coefficients<ModelId::g1070, 8>;             // a1..a8
using P1201_1Coefficients = Coefficients<ModelId::p1201_1, 4>;         // c1..c4
using P1201_2Coefficients = Coefficients<ModelId::p1201_2, 4>;         // c1..c4
using P1203Coefficients = Coefficients<ModelId::p1203_mode3, 12>;      // q1..q3 u1 u2 t1..t3 h1..h4
using YamagishiCoefficients = Coefficients<ModelId::yamagishi, 7>;     // c1..c7
using RiesCoefficients = Coefficients<ModelId::ries, 25>;              // class-major rows of c1..c5
using JoskowiczCoefficients = Coefficients<ModelId::joskowicz, 6>;     // c1..c6
using TakagiCoefficients = Coefficients<ModelId::takagi, 13>;          // a1..a3 b1..b3 c1..c3 d1..d3 e
using UvesCoefficients = Coefficients<ModelId::uves_mode1, 17>;        // n1..n17
using UvesCodingCoefficients = Coefficients<ModelId::uves_model1_1, 11>;  // n1..n11

using CoefficientSet =
    std::variant<G1070Coefficients, P1201_1Coefficients, P1201_2Coefficients, P1203Coefficients,
                 YamagishiCoefficients, RiesCoefficients, JoskowiczCoefficients, TakagiCoefficients,
                 UvesCoefficients, UvesCodingCoefficients>;

inline constexpr int kRiesClasses = 5;
inline constexpr std::size_t kRiesRowSize = 5;

ModelId model_of(const CoefficientSet& set);
std::span<const std::string_view> coefficient_names(ModelId id);
std::size_t coefficient_count(ModelId id);
std::vector<double> to_vector(const CoefficientSet& set);
// Throws InvalidArgument on arity mismatch.
CoefficientSet make_coefficients(ModelId id, std::span<const double> values);
// Starting values shipped with the library. P.1203 uses the recommended
// Mode 3 values with an identity handheld mapping; the others are plausible
// starting points to be refitted.
CoefficientSet default_coefficients(ModelId id);

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct Prediction {
  ModelId model = ModelId::g1070;
  double mos = 1.0;
  // Output on the model's own scale (e.g. 0..100 for P.1201.2 and P.1203).
  double native_scale_value = 0.0;
  std::vector<NamedValue> breakdown;
  std::vector<std::string> warnings;

  // Throws InvalidArgument when `name` is not in the breakdown.
  double term(std::string_view name) const;
};

// R (0..100) to MOS (1..4.5): the E-model cubic 1 + 0.035R + R(R-60)(100-R)7e-6
// for R >= 10, joined to (0, 1) by a straight line below R = 10 where the
// cubic dips under 1 and is not monotone. Input is clamped to [0, 100].
double mos_from_r(double r);
// Inverse of mos_from_r; input clamped to [1, 4.5].
double r_from_mos(double mos);

Prediction predict_g1070(const StreamFeatures& f, const G1070Coefficients& k);
Prediction predict_p1201_1(const StreamFeatures& f, const P1201_1Coefficients& k);
Prediction predict_p1201_2(const StreamFeatures& f, const P1201_2Coefficients& k);
Prediction predict_p1203_mode3(const StreamFeatures& f, const DisplayParams& d, const P1203Coefficients& k);
Prediction predict_yamagishi(const StreamFeatures& f, const YamagishiCoefficients& k);
Prediction predict_ries(const StreamFeatures& f, const RiesCoefficients& k);
Prediction predict_joskowicz(const StreamFeatures& f, const JoskowiczCoefficients& k);
Prediction predict_takagi(const StreamFeatures& f, const TakagiCoefficients& k);
Prediction predict_uves_mode1(const StreamFeatures& f, const DisplayParams& d, const UvesCoefficients& k);
Prediction predict_uves_model1_1(const StreamFeatures& f, const UvesCodingCoefficients& k);

// Dispatches on the coefficient variant. Throws DomainError when the formula
// leaves its domain and InvalidArgument on non-finite inputs.
Prediction predict(const CoefficientSet& k, const StreamFeatures& f, const DisplayParams& d);

// Allocation-free MOS evaluation for inner loops; nullopt wherever predict()
// would throw DomainError or reject a non-finite input.
std::optional<double> try_predict_mos(const CoefficientSet& k, const StreamFeatures& f,
                                      const DisplayParams& d) noexcept;

}  // namespace nrvqa
