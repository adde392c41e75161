// Copyright 2026 The InstaBoost Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Buffer-level entry point for language bindings. Everything crosses the
// boundary as plain bytes, JSON and string maps.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "instaboost/annotations.hpp"

namespace instaboost {

struct BufferResult {
  int height = 0;
  int width = 0;
  /// Row-major interleaved RGB, height * width * 3 bytes.
  std::vector<std::uint8_t> rgb;
  /// Output annotation records.
  Json annotations = Json::array();
  /// One record per processed instance.
  Json provenance = Json::array();
  bool applied = false;
};

/// Augments one image held in a caller-owned RGB buffer. `annotations` is a
/// JSON array of COCO annotation records; `config` takes the keys listed by
/// override_keys(). The random stream equals the batch driver's for
/// (seed, image_id). Throws InvalidArgument for a bad buffer or config key.
BufferResult augment_one(const std::uint8_t* rgb, std::size_t length, int height, int width,
                         const Json& annotations,
                         const std::map<std::string, std::string>& config, std::uint64_t seed,
                         std::int64_t image_id = 0);

std::string binding_version();

}  // namespace instaboost
