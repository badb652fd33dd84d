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

// Regenerates the H.264 parser fixtures with libavcodec/libx264.
//
// Each fixture is written as <name>.264 plus <name>.expected.json holding what
// the encoder itself reported per packet (picture type, frame QP, packet size).
// The parser tests compare against that sidecar, never against the parser.
//
//   generate_fixtures <output-dir>

extern "C" {
#include <libavcodec/avcodec.h>
#include <libavutil/imgutils.h>
#include <libavutil/opt.h>
}

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace {

struct FixtureSpec {
  std::string name;
  int width;
  int height;
  int frames;
  int fps;
  std::string x264_params;
};

void fill_frame(AVFrame* frame, int n) {
  // Moving diagonal ramp with a pseudo-random texture so P frames carry
  // residual data.
  uint32_t lcg = 0x1234567u + static_cast<uint32_t>(n) * 2654435761u;
  for (int y = 0; y < frame->height; ++y) {
    uint8_t* row = frame->data[0] + y * frame->linesize[0];
    for (int x = 0; x < frame->width; ++x) {
      lcg = lcg * 1664525u + 1013904223u;
      row[x] = static_cast<uint8_t>((x + y + 3 * n) & 0xff) ^ static_cast<uint8_t>((lcg >> 28) & 0x7);
    }
  }
  for (int plane = 1; plane < 3; ++plane) {
    for (int y = 0; y < frame->height / 2; ++y) {
      uint8_t* row = frame->data[plane] + y * frame->linesize[plane];
      for (int x = 0; x < frame->width / 2; ++x) {
        row[x] = static_cast<uint8_t>(128 + ((x + 2 * n) % 32) - 16 * (plane - 1));
      }
    }
  }
}

char picture_type_letter(int pict_type) {
  switch (pict_type) {
    case AV_PICTURE_TYPE_I: return 'I';
    case AV_PICTURE_TYPE_P: return 'P';
    case AV_PICTURE_TYPE_B: return 'B';
    default: return '?';
  }
}

void encode(const FixtureSpec& spec, const std::string& dir) {
  const AVCodec* codec = avcodec_find_encoder_by_name("libx264");
  if (codec == nullptr) throw std::runtime_error("libx264 encoder not available");

  AVCodecContext* ctx = avcodec_alloc_context3(codec);
  ctx->width = spec.width;
  ctx->height = spec.height;
  ctx->pix_fmt = AV_PIX_FMT_YUV420P;
  ctx->time_base = AVRational{1, spec.fps};
  ctx->framerate = AVRational{spec.fps, 1};
  ctx->gop_size = 250;
  ctx->thread_count = 1;
  av_opt_set(ctx->priv_data, "preset", "medium", 0);
  av_opt_set(ctx->priv_data, "x264-params", spec.x264_params.c_str(), 0);
  if (avcodec_open2(ctx, codec, nullptr) < 0) throw std::runtime_error("avcodec_open2 failed");

  AVFrame* frame = av_frame_alloc();
  frame->format = ctx->pix_fmt;
  frame->width = ctx->width;
  frame->height = ctx->height;
  av_frame_get_buffer(frame, 32);
  AVPacket* pkt = av_packet_alloc();

  std::vector<uint8_t> stream;
  nlohmann::json packets = nlohmann::json::array();

  auto drain = [&]() {
    while (avcodec_receive_packet(ctx, pkt) == 0) {
#if LIBAVCODEC_VERSION_MAJOR < 59
      int stats_size = 0;
#else
      size_t stats_size = 0;
#endif
      const uint8_t* stats = av_packet_get_side_data(pkt, AV_PKT_DATA_QUALITY_STATS, &stats_size);
      if (stats == nullptr || stats_size < 5) throw std::runtime_error("encoder emitted no quality stats");
      const uint32_t quality = static_cast<uint32_t>(stats[0]) | (static_cast<uint32_t>(stats[1]) << 8) |
                               (static_cast<uint32_t>(stats[2]) << 16) | (static_cast<uint32_t>(stats[3]) << 24);
      packets.push_back({{"type", std::string(1, picture_type_letter(stats[4]))},
                         {"qp", static_cast<double>(quality) / FF_QP2LAMBDA},
                         {"bytes", pkt->size}});
      stream.insert(stream.end(), pkt->data, pkt->data + pkt->size);
      av_packet_unref(pkt);
    }
  };

  for (int n = 0; n < spec.frames; ++n) {
    av_frame_make_writable(frame);
    fill_frame(frame, n);
    frame->pts = n;
    avcodec_send_frame(ctx, frame);
    drain();
  }
  avcodec_send_frame(ctx, nullptr);
  drain();

  std::ofstream(dir + "/" + spec.name + ".264", std::ios::binary)
      .write(reinterpret_cast<const char*>(stream.data()), static_cast<std::streamsize>(stream.size()));
  nlohmann::json expected = {{"width", spec.width},       {"height", spec.height},
                             {"fps", spec.fps},           {"encoder_params", spec.x264_params},
                             {"total_bytes", stream.size()}, {"packets", packets}};
  std::ofstream(dir + "/" + spec.name + ".expected.json") << expected.dump(2) << "\n";

  av_packet_free(&pkt);
  av_frame_free(&frame);
  avcodec_free_context(&ctx);
  std::printf("%s: %zu bytes, %zu packets\n", spec.name.c_str(), stream.size(), packets.size());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-dir>\n", argv[0]);
    return 2;
  }
  const std::vector<FixtureSpec> specs = {
      {"idr_p_720p_qp30", 1280, 720, 10, 30,
       "qp=30:ipratio=1.0:pbratio=1.0:bframes=0:keyint=250:min-keyint=250:scenecut=0:aq-mode=0:"
       "mbtree=0:weightp=0"},
      {"ibp_1080p_sliced", 1920, 1080, 12, 25,
       "qp=28:bframes=2:b-pyramid=none:b-adapt=0:keyint=6:min-keyint=6:scenecut=0:slices=4:aq-mode=0:"
       "mbtree=0"},
      {"cavlc_360p_weighted", 640, 360, 8, 24,
       "qp=35:cabac=0:bframes=0:keyint=4:min-keyint=4:scenecut=0:weightp=2:ref=3"},
  };
  try {
    for (const auto& spec : specs) encode(spec, argv[1]);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
