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

#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "nrvqa/error.h"
#include "nrvqa/features.h"
#include "nrvqa/features_io.h"

namespace nrvqa {
namespace {

std::vector<FrameRecord> gops(const std::vector<std::uint64_t>& iframe_sizes, int gop_length, double qp = 30) {
  std::vector<FrameRecord> frames;
  std::int64_t index = 0;
  for (const auto size : iframe_sizes) {
    for (int i = 0; i < gop_length; ++i) {
      frames.push_back({index++, i == 0 ? FrameType::I : FrameType::P, i == 0 ? size : 800, qp, {}, {}});
    }
  }
  return frames;
}

TEST(Iflicker, Examples) {
  EXPECT_EQ(detect_iflicker(std::vector<double>{30, 30, 30}), 0);
  EXPECT_EQ(detect_iflicker(std::vector<double>{30, 40, 30}), 1);
  EXPECT_EQ(detect_iflicker(std::vector<double>{30, 35, 30}), 0);  // strict inequality
  EXPECT_EQ(detect_iflicker(std::vector<double>{30, 30, 40, 30, 30}), 1);
  EXPECT_EQ(detect_iflicker(std::vector<double>{30, 40}), 0);
  EXPECT_EQ(detect_iflicker(std::vector<double>{}), 0);
}

TEST(Iflicker, InvariantUnderConstantShift) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> qp(20, 40);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(30), b(30);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = qp(rng);
      b[i] = a[i] + 7.0;
    }
    EXPECT_EQ(detect_iflicker(a), detect_iflicker(b));
  }
}

TEST(Scenes, SingleRunIsOneLowestScene) {
  const auto frames = gops({5000, 5000, 5000}, 10);
  const auto scenes = segment_scenes(frames);
  ASSERT_EQ(scenes.size(), 1u);
  EXPECT_EQ(scenes[0].gop_count, 3);
  EXPECT_EQ(scenes[0].weight, 16.0);
}

TEST(Scenes, ExplicitBoundaries) {
  std::vector<std::uint64_t> sizes(10, 5000);
  sizes.insert(sizes.end(), 5, 8000);
  const auto frames = gops(sizes, 4);
  const std::vector<std::int64_t> boundaries = {10};
  const auto scenes = segment_scenes(frames, std::span<const std::int64_t>(boundaries));
  ASSERT_EQ(scenes.size(), 2u);
  EXPECT_EQ(scenes[0].gop_count, 10);
  EXPECT_EQ(scenes[1].gop_count, 5);
  EXPECT_EQ(scenes[0].avg_iframe_bytes, 5000);
  EXPECT_EQ(scenes[1].avg_iframe_bytes, 8000);
  EXPECT_EQ(scenes[0].weight, 16.0);
  EXPECT_EQ(scenes[1].weight, 1.0);
}

TEST(Scenes, RunningMeanHeuristic) {
  // Hand trace: GOPs 1..4 stay within 20% of 5000; GOP 5 (9000) deviates by
  // 80% and opens a new scene whose mean stays at 9000.
  std::vector<std::uint64_t> sizes(5, 5000);
  sizes.insert(sizes.end(), 5, 9000);
  const auto scenes = segment_scenes(gops(sizes, 6));
  ASSERT_EQ(scenes.size(), 2u);
  EXPECT_EQ(scenes[0].gop_count, 5);
  EXPECT_EQ(scenes[1].gop_count, 5);
}

TEST(Scenes, TiesGoToFirstScene) {
  const std::vector<std::int64_t> boundaries = {2};
  const auto scenes = segment_scenes(gops({4000, 4000, 4000, 4000}, 3), std::span<const std::int64_t>(boundaries));
  ASSERT_EQ(scenes.size(), 2u);
  EXPECT_EQ(scenes[0].weight, 16.0);
  EXPECT_EQ(scenes[1].weight, 1.0);
}

TEST(Scenes, BoundariesPartitionAllGops) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::uint64_t> sizes(20);
    for (auto& s : sizes) s = std::uniform_int_distribution<std::uint64_t>(1000, 20000)(rng);
    std::vector<std::int64_t> boundaries;
    for (std::int64_t g = 1; g < 20; ++g) {
      if (rng() % 4 == 0) boundaries.push_back(g);
    }
    const auto scenes = segment_scenes(gops(sizes, 3), std::span<const std::int64_t>(boundaries));
    int total = 0;
    int heavy = 0;
    for (const auto& s : scenes) {
      total += s.gop_count;
      heavy += s.weight == 16.0 ? 1 : 0;
    }
    EXPECT_EQ(total, 20);
    EXPECT_EQ(heavy, 1);
    EXPECT_EQ(scenes.size(), boundaries.size() + 1);
  }
}

TEST(Scenes, InvalidBoundaries) {
  const auto frames = gops({5000, 6000, 7000}, 2);
  const std::vector<std::int64_t> out_of_range = {3};
  const std::vector<std::int64_t> decreasing = {2, 1};
  EXPECT_THROW(segment_scenes(frames, std::span<const std::int64_t>(out_of_range)), InvalidArgument);
  EXPECT_THROW(segment_scenes(frames, std::span<const std::int64_t>(decreasing)), InvalidArgument);
  std::vector<FrameRecord> no_intra = {{0, FrameType::P, 100, 30, {}, {}}};
  EXPECT_THROW(segment_scenes(no_intra), InvalidArgument);
}

TEST(Aggregate, AllIntraUniform) {
  std::vector<FrameRecord> frames;
  for (int i = 0; i < 10; ++i) frames.push_back({i, FrameType::I, 5000, 30, {}, {}});
  const auto f = aggregate_features(frames, 25, 1000, 640, 360);
  EXPECT_EQ(f.avg_bytes_per_iframe, 5000);
  EXPECT_EQ(f.gop_distance, 1);
  EXPECT_NEAR(f.quant, 30.0 / 51.0, 1e-15);
  EXPECT_EQ(f.key_frame_rate, 25);
}

TEST(Aggregate, FlickerCount) {
  std::vector<FrameRecord> frames;
  const double qps[] = {30, 30, 40, 30, 30};
  for (int i = 0; i < 5; ++i) frames.push_back({i, i == 0 ? FrameType::I : FrameType::P, 1000, qps[i], {}, {}});
  EXPECT_EQ(aggregate_features(frames, 25, 1000, 640, 360).iflicker_count, 1);
}

TEST(Aggregate, KeyFrameRateFromGopSpacing) {
  const auto f = aggregate_features(gops({9000, 9000, 9000}, 30), 30, 2000, 1280, 720);
  EXPECT_EQ(f.gop_distance, 30);
  EXPECT_EQ(f.key_frame_rate, 1.0);
  EXPECT_NEAR(f.key_frame_rate, f.framerate_fps / f.gop_distance, 1e-9);
}

TEST(Aggregate, QpStatisticsAndQuantProxy) {
  std::vector<FrameRecord> frames = {{0, FrameType::I, 9000, 24, 0.1, 2.0},
                                     {1, FrameType::P, 900, 30, 0.3, 4.0},
                                     {2, FrameType::B, 500, 36, {}, {}}};
  const auto f = aggregate_features(frames, 30, 1500, 1280, 720);
  EXPECT_EQ(f.min_qp, 24);
  EXPECT_EQ(f.max_qp, 36);
  EXPECT_EQ(f.avg_qp, 30);
  EXPECT_NEAR(f.quant, 33.0 / 51.0, 1e-15);
  EXPECT_NEAR(f.skip_ratio, 0.2, 1e-15);
  EXPECT_NEAR(f.avg_mv, 3.0, 1e-15);
  EXPECT_FALSE(f.imputed.skip_ratio);
  EXPECT_TRUE(f.imputed.sad);
  EXPECT_NO_THROW(validate(f));
}

TEST(Aggregate, MissingOptionalsAreImputed) {
  const auto f = aggregate_features(gops({9000}, 5), 30, 1500, 1280, 720);
  EXPECT_TRUE(f.imputed.skip_ratio);
  EXPECT_TRUE(f.imputed.avg_mv);
  EXPECT_EQ(f.skip_ratio, 0.0);
  EXPECT_EQ(f.avg_mv, 0.0);
}

TEST(Aggregate, OrderedQpInvariantAndDeterminism) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    std::vector<FrameRecord> frames;
    const int n = std::uniform_int_distribution<int>(1, 60)(rng);
    for (int i = 0; i < n; ++i) {
      frames.push_back({i, i % 12 == 0 ? FrameType::I : FrameType::P,
                        std::uniform_int_distribution<std::uint64_t>(100, 50000)(rng),
                        std::uniform_real_distribution<double>(0, 51)(rng), {}, {}});
    }
    const auto a = aggregate_features(frames, 25, 1000, 640, 360);
    const auto b = aggregate_features(frames, 25, 1000, 640, 360);
    EXPECT_LE(a.min_qp, a.avg_qp);
    EXPECT_LE(a.avg_qp, a.max_qp);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  }
}

TEST(Aggregate, Errors) {
  EXPECT_THROW(aggregate_features({}, 25, 1000, 640, 360), InvalidArgument);
  std::vector<FrameRecord> p_only = {{0, FrameType::P, 100, 30, {}, {}}};
  EXPECT_THROW(aggregate_features(p_only, 25, 1000, 640, 360), InvalidArgument);
  const auto frames = gops({5000}, 3);
  EXPECT_THROW(aggregate_features(frames, 0, 1000, 640, 360), InvalidArgument);
  EXPECT_THROW(aggregate_features(frames, 25, std::nan(""), 640, 360), InvalidArgument);
  std::vector<FrameRecord> bad_order = {{1, FrameType::I, 100, 30, {}, {}}, {1, FrameType::P, 100, 30, {}, {}}};
  EXPECT_THROW(aggregate_features(bad_order, 25, 1000, 640, 360), InvalidArgument);
  std::vector<FrameRecord> bad_qp = {{0, FrameType::I, 100, 60, {}, {}}};
  EXPECT_THROW(aggregate_features(bad_qp, 25, 1000, 640, 360), InvalidArgument);
}

TEST(FrameStatsCsv, RoundTrip) {
  const std::vector<FrameRecord> frames = {{0, FrameType::I, 12000, 28.5, 0.0, 0.25},
                                           {1, FrameType::P, 900, 31, {}, {}},
                                           {2, FrameType::B, 400, 33.25, 0.5, {}}};
  std::stringstream s;
  write_frame_stats_csv(s, frames);
  EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "index,frame_type,size_bytes,avg_qp,skip_ratio,avg_mv");
  const auto back = read_frame_stats_csv(s);
  ASSERT_EQ(back.size(), frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    EXPECT_EQ(back[i].index, frames[i].index);
    EXPECT_EQ(back[i].frame_type, frames[i].frame_type);
    EXPECT_EQ(back[i].size_bytes, frames[i].size_bytes);
    EXPECT_EQ(back[i].avg_qp, frames[i].avg_qp);
    EXPECT_EQ(back[i].skip_ratio, frames[i].skip_ratio);
    EXPECT_EQ(back[i].avg_mv, frames[i].avg_mv);
  }
}

TEST(FrameStatsCsv, SchemaErrorsCarryRowAndColumn) {
  std::stringstream s("index,frame_type,size_bytes,avg_qp,skip_ratio,avg_mv\n0,I,100,30,,\n1,X,100,30,,\n");
  try {
    read_frame_stats_csv(s);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.row(), std::optional<std::size_t>(3));
    EXPECT_EQ(e.column(), std::optional<std::string>("frame_type"));
  }
  std::stringstream wrong_header("idx,frame_type\n");
  EXPECT_THROW(read_frame_stats_csv(wrong_header), SchemaError);
}

TEST(FeaturesJson, RoundTrip) {
  auto f = aggregate_features(gops({9000, 4000}, 12), 24, 800, 960, 540);
  f.content_class = 3;
  const auto back = stream_features_from_json(to_json(f));
  EXPECT_EQ(to_json(back).dump(), to_json(f).dump());
}

}  // namespace
}  // namespace nrvqa
