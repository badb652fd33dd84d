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

#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>
#include "nrvqa/features.h"

namespace nrvqa {

// Frame-stats CSV: index,frame_type,size_bytes,avg_qp,skip_ratio,avg_mv with
// empty cells for the optional trailing pair.
std::vector<FrameRecord> read_frame_stats_csv(std::istream& in);
void write_frame_stats_csv(std::ostream& out, std::span<const FrameRecord> frames);

nlohmann::json to_json(const StreamFeatures& features);
StreamFeatures stream_features_from_json(const nlohmann::json& j);

}  // namespace nrvqa
