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

#include <array>
#include <cstdint>

#include "instaboost/annotations.hpp"
#include "instaboost/core.hpp"

namespace instaboost {

/// Polygon fill uses the even-odd rule sampled at pixel centers
/// (i + 0.5, j + 0.5); separate polygons of one annotation are unioned.
/// RLE segmentations are decoded directly.
BinaryMask rasterize(const InstanceAnnotation& annotation, int width, int height);

BinaryMask rasterize_polygons(const std::vector<Polygon>& polygons, int width, int height);

/// Tightest box around the foreground, pixel-edge coordinates.
BBox mask_to_bbox(const BinaryMask& mask);

/// Mean foreground pixel index.
Point2d mask_centroid(const BinaryMask& mask);

/// Chessboard (Chebyshev) distance from every pixel to the nearest
/// foreground pixel; 0 on the foreground. Exact two-pass transform.
Grid<std::int32_t> chebyshev_distance(const BinaryMask& mask);

/// Square structuring element of half-size `radius`.
BinaryMask dilate(const BinaryMask& mask, int radius);

/// Euclidean distance to the nearest pixel whose value equals `target`.
PlaneF euclidean_distance(const BinaryMask& mask, std::uint8_t target);

struct RingSpec {
  std::array<int, 3> widths{5, 5, 5};
  std::array<double, 3> weights{0.4, 0.35, 0.25};
};

/// Three bands of background around an instance, innermost first.
struct ContourRingSet {
  std::array<BinaryMask, 3> rings;
  std::array<int, 3> widths{};
  std::array<double, 3> weights{};
};

ContourRingSet contour_rings(const BinaryMask& mask, const RingSpec& spec = {});

/// clamp(0.5 + signed_distance / (2 * radius), 0, 1).
double feather_value(double signed_distance, double feather_radius);

/// Signed distance is measured to the pixel boundary between foreground and
/// background (positive inside), so neighbouring pixels across the edge sit
/// at +0.5 and -0.5. A radius of 0 returns the hard mask.
PlaneF feather_alpha(const BinaryMask& mask, double feather_radius);

/// Cropped straight-color RGBA instance. Colors are floats and may leave
/// [0, 255] after foreground estimation (see estimate_foreground).
struct AlphaInstancePatch {
  Point2i origin;  // top-left of the crop in source pixels
  Point2d center;  // instance centroid in source pixels
  std::int64_t source_annotation_id = 0;
  PlaneF red;
  PlaneF green;
  PlaneF blue;
  PlaneF alpha;

  int width() const noexcept { return alpha.width(); }
  int height() const noexcept { return alpha.height(); }
};

struct CutResult {
  AlphaInstancePatch patch;
  BinaryMask hole;  // alpha > 0 in source coordinates
  BinaryMask mask;  // rasterized annotation
};

CutResult cut_instance(const Image& image, const InstanceAnnotation& annotation,
                       double feather_radius);

/// Solves image = alpha * F + (1 - alpha) * background for the foreground
/// color F on every alpha-positive pixel of the patch, given the filled
/// background. Compositing the result back at its original place then
/// reproduces the source pixels.
void estimate_foreground(AlphaInstancePatch& patch, const Image& source, const Image& background);

}  // namespace instaboost
