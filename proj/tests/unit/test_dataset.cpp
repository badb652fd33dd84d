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

#include <sstream>
#include <string>

#include "nrvqa/dataset.h"
#include "nrvqa/error.h"
#include "synthetic.h"

namespace nrvqa {
namespace {

const std::string kHeader =
    "sequence_id,source_id,mos,ci95,bitrate_kbps,framerate_fps,width,height,avg_bytes_per_iframe,avg_qp,max_qp,"
    "min_qp,iflicker,skip_ratio,avg_mv,kfr,sad,content_class,screen_inches,display_width,display_height,"
    "device_type";

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return read_dataset_csv(in);
}

void expect_schema_error(const std::string& text, std::size_t row, const std::string& column) {
  try {
    parse(text);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.row(), std::optional<std::size_t>(row)) << e.what();
    EXPECT_EQ(e.column(), std::optional<std::string>(column)) << e.what();
  }
}

TEST(DatasetCsv, RoundTripIsStable) {
  testing::SyntheticOptions options;
  options.rows = 40;
  options.seed = 3;
  auto ds = testing::synthetic_dataset(default_coefficients(ModelId::g1070), options);
  ds.rows[0].subjective.ci95_halfwidth = 0.125;
  std::stringstream first;
  write_dataset_csv(first, ds);
  const auto back = read_dataset_csv(first);
  ASSERT_EQ(back.size(), ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& a = ds.rows[i];
    const auto& b = back.rows[i];
    EXPECT_EQ(a.sequence_id(), b.sequence_id());
    EXPECT_EQ(a.subjective.source_id, b.subjective.source_id);
    EXPECT_EQ(a.subjective.mos, b.subjective.mos);
    EXPECT_EQ(a.subjective.ci95_halfwidth, b.subjective.ci95_halfwidth);
    EXPECT_EQ(a.features.bitrate_kbps, b.features.bitrate_kbps);
    EXPECT_EQ(a.features.framerate_fps, b.features.framerate_fps);
    EXPECT_EQ(a.features.width_px, b.features.width_px);
    EXPECT_EQ(a.features.avg_qp, b.features.avg_qp);
    EXPECT_EQ(a.features.quant, b.features.quant);
    EXPECT_EQ(a.features.content_class, b.features.content_class);
    EXPECT_EQ(a.display.device_type, b.display.device_type);
    EXPECT_EQ(a.display.display_width_px, b.display.display_width_px);
  }
  std::stringstream second;
  write_dataset_csv(second, back);
  std::stringstream again;
  write_dataset_csv(again, ds);
  EXPECT_EQ(second.str(), again.str());
}

TEST(DatasetCsv, BlankOptionalCellsAreImputed) {
  const auto ds = parse(kHeader + "\ns1,,3.2,,1000,25,640,360,,30,,,,,,,,,,,,\n");
  ASSERT_EQ(ds.size(), 1u);
  const auto& r = ds.rows[0];
  EXPECT_EQ(r.subjective.source_id, "s1");
  EXPECT_FALSE(r.subjective.ci95_halfwidth.has_value());
  EXPECT_TRUE(r.features.imputed.avg_bytes_per_iframe);
  EXPECT_TRUE(r.features.imputed.skip_ratio);
  EXPECT_TRUE(r.features.imputed.avg_mv);
  EXPECT_TRUE(r.features.imputed.sad);
  EXPECT_TRUE(r.features.imputed.key_frame_rate);
  EXPECT_TRUE(r.features.imputed.quant);
  EXPECT_EQ(r.features.max_qp, 30);
  EXPECT_EQ(r.features.min_qp, 30);
  EXPECT_EQ(r.features.key_frame_rate, 1.0);
  EXPECT_EQ(r.features.gop_distance, 25.0);
  EXPECT_NEAR(r.features.quant, 30.0 / 51.0, 1e-15);
  EXPECT_FALSE(r.features.content_class.has_value());
  EXPECT_EQ(r.display.display_width_px, 640);
  EXPECT_EQ(r.display.display_height_px, 360);
  EXPECT_EQ(r.display.device_type, DeviceType::tv);
}

TEST(DatasetCsv, OptionalQuantColumn) {
  const auto ds = parse(kHeader + ",quant\n# comment\ns1,a,3.2,0.2,1000,25,640,360,4000,30,34,26,1,0.1,2,2,3.5,2,"
                                  "5.5,1080,1920,handheld,0.4\n");
  const auto& r = ds.rows[0];
  EXPECT_EQ(r.features.quant, 0.4);
  EXPECT_FALSE(r.features.imputed.quant);
  EXPECT_EQ(r.features.content_class, std::optional<int>(2));
  EXPECT_EQ(r.display.device_type, DeviceType::handheld);
  EXPECT_EQ(r.features.gop_distance, 12.5);
}

TEST(DatasetCsv, SchemaErrorsNameRowAndColumn) {
  const std::string ok = ",a,3.2,,1000,25,640,360,,30,,,,,,,,,,,,";
  expect_schema_error(kHeader + "\ns1,a,3.2,,fast,25,640,360,,30,,,,,,,,,,,,\n", 2, "bitrate_kbps");
  expect_schema_error(kHeader + "\ns1,a,6,,1000,25,640,360,,30,,,,,,,,,,,,\n", 2, "mos");
  expect_schema_error(kHeader + "\ns1" + ok + "\ns2,a,3.2,,1000,25,640,360,,30,,,,,,,,7,,,,\n", 3, "content_class");
  expect_schema_error(kHeader + "\ns1,a,3.2,,1000,25,640,360,,30,,,,,,,,,,,,phone\n", 2, "device_type");
  expect_schema_error(kHeader + "\ns1" + ok + "\ns1" + ok + "\n", 3, "sequence_id");
  expect_schema_error(kHeader + "\ns1,a,3.2,,1000,0,640,360,,30,,,,,,,,,,,,\n", 2, "framerate_fps");
  EXPECT_THROW(parse("sequence_id,mos\n"), SchemaError);
  EXPECT_THROW(parse(kHeader + "\ns1,a,3\n"), SchemaError);
  EXPECT_THROW(parse(""), SchemaError);
}

TEST(Dataset, ValidateAndSubset) {
  testing::SyntheticOptions options;
  options.rows = 6;
  auto ds = testing::random_rows(options);
  EXPECT_NO_THROW(ds.validate());
  const auto sub = ds.subset({4, 1});
  ASSERT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub.rows[0].sequence_id(), ds.rows[4].sequence_id());
  EXPECT_EQ(sub.rows[1].sequence_id(), ds.rows[1].sequence_id());
  ds.rows[2].subjective.sequence_id = ds.rows[0].sequence_id();
  EXPECT_THROW(ds.validate(), InvalidArgument);
  EXPECT_THROW(load_dataset("/nonexistent/dataset.csv"), InvalidArgument);
}

}  // namespace
}  // namespace nrvqa
