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

// Labelled training/evaluation rows and the dataset CSV schema:
//
// sequence_id,source_id,mos,ci95,bitrate_kbps,framerate_fps,width,height,
// avg_bytes_per_iframe,avg_qp,max_qp,min_qp,iflicker,skip_ratio,avg_mv,kfr,
// sad,content_class,screen_inches,display_width,display_height,device_type
// [,quant]
//
// Blank optional cells take defaults and set the matching imputed flag.

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "nrvqa/features.h"

namespace nrvqa {

struct DatasetRow {
  StreamFeatures features;
  DisplayParams display;
  SubjectiveRecord subjective;  // carries sequence_id and source_id

  const std::string& sequence_id() const { return subjective.sequence_id; }
};

struct Dataset {
  std::vector<DatasetRow> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  // Throws InvalidArgument on duplicate sequence ids or MOS outside [1, 5].
  void validate() const;
  // Rows at `indices`, in that order.
  Dataset subset(const std::vector<std::size_t>& indices) const;
};

// Throws SchemaError with row and column on any violation.
Dataset read_dataset_csv(std::istream& in);
Dataset load_dataset(const std::filesystem::path& path);
// Writes every column including the optional trailing quant.
void write_dataset_csv(std::ostream& out, const Dataset& dataset);

}  // namespace nrvqa
