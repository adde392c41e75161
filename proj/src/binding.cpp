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
#include "instaboost/binding.hpp"

#include <algorithm>

#include "instaboost/config.hpp"
#include "instaboost/pipeline.hpp"

namespace instaboost {

BufferResult augment_one(const std::uint8_t* rgb, std::size_t length, int height, int width,
                         const Json& annotations,
                         const std::map<std::string, std::string>& config, std::uint64_t seed,
                         std::int64_t image_id) {
  if (height <= 0 || width <= 0) {
    throw Error(ErrorKind::InvalidArgument, "image dimensions must be positive");
  }
  const std::size_t expected = static_cast<std::size_t>(height) * static_cast<std::size_t>(width) * 3;
  if (rgb == nullptr || length != expected) {
    throw Error(ErrorKind::InvalidArgument, "buffer holds " + std::to_string(length) +
                                                " bytes, expected " + std::to_string(expected));
  }
  if (!annotations.is_array()) {
    throw Error(ErrorKind::InvalidArgument, "annotations must be a JSON array");
  }

  AugmentConfig cfg;
  apply_overrides(cfg, config);
  cfg.seed = seed;

  Image image(width, height);
  std::copy(rgb, rgb + length, image.bytes().begin());
  std::vector<InstanceAnnotation> anns;
  anns.reserve(annotations.size());
  for (const auto& record : annotations) {
    try {
      anns.push_back(annotation_from_json(record));
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidArgument, e.what());
    }
  }

  Rng rng = image_rng(seed, image_id);
  AugmentedSample sample = augment_image(image, anns, cfg, rng);

  BufferResult out;
  out.height = height;
  out.width = width;
  out.rgb = std::move(sample.image.bytes());
  out.applied = sample.applied;
  for (const auto& a : sample.annotations) out.annotations.push_back(annotation_to_json(a));
  for (const auto& p : sample.provenance) out.provenance.push_back(to_json(p));
  return out;
}

std::string binding_version() { return std::string(version()); }

}  // namespace instaboost
