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

// Appearance-consistency heatmap.
//
// The background around an instance is described by three contour rings.
// Moving the rings by a candidate offset and comparing colors pixel by pixel
// gives an appearance distance per candidate center; the distances are
// log-rescaled into a heatmap and normalized into a sampling distribution
// for the new paste center. Scale and rotation never enter the heatmap.

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "instaboost/core.hpp"
#include "instaboost/maskops.hpp"

namespace instaboost {

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

struct HeatmapConfig {
  std::array<int, 3> ring_widths{5, 5, 5};
  std::array<double, 3> ring_weights{0.4, 0.35, 0.25};
  Size2i working_size{180, 120};
  double epsilon_log = 1e-6;
  int stride = 1;
};

void check(const HeatmapConfig& cfg);

/// Planar float copy of an RGB image.
struct ColorPlanes {
  PlaneF red;
  PlaneF green;
  PlaneF blue;

  int width() const noexcept { return red.width(); }
  int height() const noexcept { return red.height(); }
};

ColorPlanes to_planes(const Image& image);

/// Area-weighted resize to exactly `size` (aspect ratio is not kept).
/// Returns an exact copy when the size is unchanged.
ColorPlanes resize_area(const ColorPlanes& planes, Size2i size);
/// Equivalent to resize_area(to_planes(image), size) up to float rounding,
/// without the full-size float copy.
ColorPlanes resize_area(const Image& image, Size2i size);
PlaneF resize_area(const PlaneF& plane, Size2i size);
/// A working pixel is foreground when at least half its footprint is.
BinaryMask resize_mask(const BinaryMask& mask, Size2i size);
/// Bilinear, pixel-center aligned.
PlaneD resize_bilinear(const PlaneD& grid, Size2i size);

/// Precomputed state for scanning appearance distances over candidate
/// centers at one resolution.
class AppearanceScanner {
 public:
  /// `hole` marks pixels that may not serve as translated partners (the
  /// instance itself); `origin` is the descriptor center, a pixel index.
  AppearanceScanner(const ColorPlanes& image, const ContourRingSet& rings, const BinaryMask& hole,
                    Point2i origin);

  /// Weighted sum over rings of the mean Euclidean RGB distance between each
  /// ring pixel and its partner shifted by (candidate - origin). Partners
  /// outside the image or inside the hole are skipped; if more than half of
  /// any ring's pixels are skipped the distance is +inf. Zero at the origin.
  double distance_at(Point2i candidate) const;

  /// Distance for every candidate on the stride grid anchored at the
  /// origin; cells between grid points copy the nearest lower-left grid
  /// value.
  PlaneD distance_grid(int stride = 1) const;

  Point2i origin() const noexcept { return origin_; }
  Size2i size() const noexcept { return {width_, height_}; }

 private:
  struct RingPixel {
    int x;
    int y;
    float r, g, b;
  };

  double finish(const std::array<double, 3>& sums, const std::array<double, 3>& counts) const;

  int width_ = 0;
  int height_ = 0;
  int row_stride_ = 0;
  Point2i origin_;
  std::array<double, 3> weights_{};
  std::array<std::vector<RingPixel>, 3> ring_pixels_;
  // Image planes; `valid_` is 1 on pixels usable as partners.
  std::vector<float> red_, green_, blue_, valid_;
};

/// Single-candidate appearance distance at the resolution of `image`.
double appearance_distance(const ColorPlanes& image, const ContourRingSet& rings,
                           const BinaryMask& hole, Point2i origin, Point2i candidate);

struct ConsistencyHeatmap {
  Size2i source_size;
  Size2i computed_at;
  /// Appearance distance per candidate at working resolution.
  PlaneD distance;
  /// Log-rescaled heatmap at working resolution.
  PlaneD working_value;
  /// Heatmap upsampled to the source resolution.
  PlaneD value;
  /// Instance center at working resolution.
  Point2i origin;
  /// Instance centroid at source resolution.
  Point2d source_center;
  double min_distance = 0.0;
  double max_distance = 0.0;
  /// All finite distances equal; the heatmap is uniform.
  bool degenerate = false;
  /// No candidate had a finite distance; value is a delta at the center.
  bool all_infinite = false;
};

/// h(x) = -log(max((x - m) / (M - m), eps)) over finite entries, 0 on +inf,
/// 1.0 everywhere finite when M == m.
PlaneD log_rescale(const PlaneD& distances, double epsilon_log);

/// Full heatmap. The image and mask are resized to cfg.working_size, rings
/// are rebuilt there with widths scaled by the mean resize factor (at least
/// 1 px), and the value grid is upsampled back to the source size.
ConsistencyHeatmap compute_heatmap(const Image& image, const BinaryMask& instance_mask,
                                   const HeatmapConfig& cfg = {});

/// Same computation without the fixed-size acceleration.
ConsistencyHeatmap compute_heatmap_exact(const Image& image, const BinaryMask& instance_mask,
                                         const HeatmapConfig& cfg = {});

/// Normalized sampling distribution with its cumulative table.
class ProbabilityMap {
 public:
  ProbabilityMap(PlaneD probabilities);

  const PlaneD& p() const noexcept { return p_; }
  int width() const noexcept { return p_.width(); }
  int height() const noexcept { return p_.height(); }
  const std::vector<double>& cumulative() const noexcept { return cdf_; }

 private:
  PlaneD p_;
  std::vector<double> cdf_;
};

/// p = value / sum(value) after zeroing excluded pixels. Throws
/// DegenerateDistribution when no mass remains.
ProbabilityMap to_probability(const PlaneD& value, const BinaryMask* exclusion = nullptr);
ProbabilityMap to_probability(const ConsistencyHeatmap& hm, const BinaryMask* exclusion = nullptr);

/// Inverse-CDF draw over the flattened grid; one uniform per call.
Point2i sample_center(Rng& rng, const ProbabilityMap& pm);

/// Grid positions of the minimum finite distance and maximum value.
Point2i argmin_distance(const PlaneD& distance);
Point2i argmax_value(const PlaneD& value);

/// Pearson correlation of two equally sized grids.
double pearson(const PlaneD& a, const PlaneD& b);

/// 8-bit visualization: values normalized to [0, 255], optionally mapped
/// through a blue-to-red colormap.
Image render_heatmap(const PlaneD& value, bool colormap = true);

}  // namespace instaboost
