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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "instaboost/annotations.hpp"
#include "instaboost/heatmap.hpp"
#include "instaboost/inpaint.hpp"
#include "instaboost/transform.hpp"

namespace instaboost {

enum class AugmentMode { RandomJitter, MapGuided };

std::string_view to_string(AugmentMode mode);
AugmentMode parse_mode(std::string_view text);

struct AugmentConfig {
  AugmentMode mode = AugmentMode::MapGuided;
  /// Chance that an image is augmented at all.
  double apply_probability = 0.5;
  /// Upper bound on moved instances per image; unset moves all of them.
  std::optional<int> max_instances_per_image;
  JitterConfig jitter;
  HeatmapConfig heatmap;
  InpaintConfig inpaint;
  double feather_radius = 3.0;
  std::uint64_t seed = 0;
  /// Zero the paste probability on top of other instances.
  bool forbid_overlap = false;
  double alpha_threshold = 0.5;
  /// A move is dropped when fewer alpha-positive pixels stay on the canvas.
  int min_visible_pixels = 20;
};

void check(const AugmentConfig& cfg);

struct InstanceProvenance {
  std::int64_t source_annotation_id = 0;
  std::optional<std::int64_t> new_annotation_id;
  AugmentMode mode = AugmentMode::RandomJitter;
  bool heatmap_used = false;
  bool moved = false;
  AffineTuple transform;
  Point2d original_center;
  Point2d sampled_center;
  /// Error kind name when the instance was kept in place.
  std::string failure;
  /// Annotations now partly covered by this paste (their masks are kept).
  std::vector<std::int64_t> occludes;
};

struct StageTimes {
  double cut = 0.0;
  double inpaint = 0.0;
  double heatmap = 0.0;
  double warp = 0.0;
  double composite = 0.0;

  StageTimes& operator+=(const StageTimes& o);
};

struct AugmentedSample {
  Image image;
  std::vector<InstanceAnnotation> annotations;
  std::vector<InstanceProvenance> provenance;
  bool applied = false;
  StageTimes times;
};

/// Per-image random stream: seeded from seed XOR image id.
Rng image_rng(std::uint64_t seed, std::int64_t image_id);

/// Moves the instances of one image. Annotations come back in input order;
/// moved ones get fresh ids counting up from `first_new_id`. Per-instance
/// failures leave that instance untouched and are listed in provenance.
AugmentedSample augment_image(const Image& image, const std::vector<InstanceAnnotation>& anns,
                              const AugmentConfig& cfg, Rng& rng, std::int64_t first_new_id);

/// As above with new ids starting after the largest input id.
AugmentedSample augment_image(const Image& image, const std::vector<InstanceAnnotation>& anns,
                              const AugmentConfig& cfg, Rng& rng);

struct DatasetRunOptions {
  int workers = 1;
  /// Augmented copies per input image; copies after the first get new
  /// image ids and a "_<k>" file-name suffix.
  int copies = 1;
};

struct RunStats {
  std::size_t images_processed = 0;
  std::size_t images_augmented = 0;
  std::size_t instances_moved = 0;
  std::size_t instance_failures = 0;
  double wall_seconds = 0.0;
  double read_seconds = 0.0;
  double write_seconds = 0.0;
  /// Summed over images.
  double augment_seconds = 0.0;
  double max_image_seconds = 0.0;
  StageTimes stages;

  double mean_image_seconds() const {
    return images_processed ? augment_seconds / static_cast<double>(images_processed) : 0.0;
  }
};

Json to_json(const RunStats& stats);
Json to_json(const InstanceProvenance& p);
std::string to_text(const RunStats& stats);

/// Batch driver. Refuses input that fails validation (ValidationFailure);
/// images are written as PNG.
RunStats augment_dataset(const std::filesystem::path& in_ann, const std::filesystem::path& image_dir,
                         const std::filesystem::path& out_ann,
                         const std::filesystem::path& out_image_dir, const AugmentConfig& cfg,
                         const DatasetRunOptions& options = {});

}  // namespace instaboost
