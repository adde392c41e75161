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

// Deterministic synthetic scenes and datasets for tests, benchmarks and
// demos.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "instaboost/annotations.hpp"

namespace instaboost::synth {

/// Smooth gradient plus multi-octave value noise and soft blobs.
Image natural_scene(int width, int height, std::uint64_t seed);

/// Sinusoidal stripes with a little per-pixel noise so no two candidate
/// placements tie exactly. Stripes run along x when `vertical` is false.
Image striped_scene(int width, int height, double period, bool vertical, std::uint64_t seed);

Image constant_image(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Linear ramp along x in every channel: value = a + b * x.
Image gradient_image(int width, int height, double a, double b);

/// Regular polygon approximation of an axis-aligned ellipse.
Polygon ellipse_polygon(double cx, double cy, double rx, double ry, int vertices = 48);

InstanceAnnotation ellipse_instance(std::int64_t id, std::int64_t image_id,
                                    std::int64_t category_id, double cx, double cy, double rx,
                                    double ry);

/// Paints a textured object into `image` over the annotation's mask.
void paint_instance(Image& image, const InstanceAnnotation& ann, std::uint64_t seed);

struct SceneSpec {
  int width = 320;
  int height = 240;
  int instances = 2;
  std::uint64_t seed = 1;
};

struct Scene {
  Image image;
  std::vector<InstanceAnnotation> annotations;
};

/// Natural background with non-overlapping painted ellipse instances.
Scene make_scene(const SceneSpec& spec, std::int64_t image_id, std::int64_t first_annotation_id);

/// Writes `count` scenes as PNG files plus an annotation document to `dir`
/// and returns the path of the document.
std::filesystem::path write_dataset(const std::filesystem::path& dir, int count,
                                    const SceneSpec& spec);

}  // namespace instaboost::synth
