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
#include "instaboost/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "instaboost/simd/kernels.hpp"

namespace instaboost {
namespace {

struct Tap {
  int index;
  double weight;
};

// Area-resampling taps along one axis: output cell i integrates the source
// interval [i * scale, (i + 1) * scale).
std::vector<std::vector<Tap>> area_taps(int src, int dst) {
  std::vector<std::vector<Tap>> taps(dst);
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    const double lo = i * scale, hi = (i + 1) * scale;
    double total = 0.0;
    for (int s = static_cast<int>(std::floor(lo)); s < std::min(src, static_cast<int>(std::ceil(hi))); ++s) {
      const double overlap = std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s));
      if (overlap > 1e-12) {
        taps[i].push_back({s, overlap});
        total += overlap;
      }
    }
    for (auto& t : taps[i]) t.weight /= total;
  }
  return taps;
}

int round_clamped(double v, int hi) {
  return std::clamp(static_cast<int>(std::lround(v)), 0, hi);
}

// Horizontal footprint of one output column. Interior source pixels all
// carry the same weight, so they are summed as integers.
struct Footprint {
  int first = 0;
  int last = 0;
  double first_weight = 0.0;
  double inner_weight = 0.0;
  double last_weight = 0.0;
};

std::vector<Footprint> footprints(int src, int dst) {
  const auto taps = area_taps(src, dst);
  std::vector<Footprint> out(dst);
  for (int i = 0; i < dst; ++i) {
    const auto& t = taps[i];
    Footprint& f = out[i];
    f.first = t.front().index;
    f.last = t.back().index;
    f.first_weight = t.front().weight;
    f.last_weight = t.back().weight;
    f.inner_weight = t.size() > 2 ? t[1].weight : 0.0;
  }
  return out;
}

// Area resampling of interleaved 8-bit data into one float plane per
// channel. For each output row the source rows strictly inside its
// footprint share one weight, so they are summed as integers first and the
// horizontal pass runs once per output row.
template <int Channels, class Load>
std::array<PlaneF, Channels> area_resample(const std::uint8_t* data, int width, int height,
                                           Size2i size, Load load) {
  const auto xf = footprints(width, size.width);
  const auto yt = area_taps(height, size.height);
  const std::size_t n = static_cast<std::size_t>(width) * Channels;
  std::vector<std::uint32_t> inner(n);
  std::vector<double> combined(n);
  std::array<PlaneF, Channels> planes;
  for (auto& p : planes) p = PlaneF(size.width, size.height);

  for (int r = 0; r < size.height; ++r) {
    const auto& taps = yt[r];
    const std::uint8_t* first = data + n * taps.front().index;
    const double first_w = taps.front().weight;
    const double inner_w = taps.size() > 2 ? taps[1].weight : 0.0;
    std::fill(inner.begin(), inner.end(), 0u);
    for (std::size_t t = 1; t + 1 < taps.size(); ++t) {
      const std::uint8_t* row = data + n * taps[t].index;
      for (std::size_t k = 0; k < n; ++k) inner[k] += load(row[k]);
    }
    for (std::size_t k = 0; k < n; ++k) combined[k] = first_w * load(first[k]) + inner_w * inner[k];
    if (taps.size() > 1) {
      const std::uint8_t* last = data + n * taps.back().index;
      const double last_w = taps.back().weight;
      for (std::size_t k = 0; k < n; ++k) combined[k] += last_w * load(last[k]);
    }

    for (int x = 0; x < size.width; ++x) {
      const Footprint& f = xf[x];
      const double* p = combined.data() + static_cast<std::size_t>(f.first) * Channels;
      std::array<double, Channels> acc{};
      for (int c = 0; c < Channels; ++c) acc[c] = f.first_weight * p[c];
      if (f.last != f.first) {
        std::array<double, Channels> mid{};
        for (int s = f.first + 1; s < f.last; ++s) {
          const double* q = combined.data() + static_cast<std::size_t>(s) * Channels;
          for (int c = 0; c < Channels; ++c) mid[c] += q[c];
        }
        const double* e = combined.data() + static_cast<std::size_t>(f.last) * Channels;
        for (int c = 0; c < Channels; ++c) acc[c] += f.inner_weight * mid[c] + f.last_weight * e[c];
      }
      for (int c = 0; c < Channels; ++c) planes[c](x, r) = static_cast<float>(acc[c]);
    }
  }
  return planes;
}

}  // namespace

void check(const HeatmapConfig& cfg) {
  for (int w : cfg.ring_widths) {
    if (w <= 0) throw Error(ErrorKind::InvalidArgument, "ring widths must be positive");
  }
  const auto& w = cfg.ring_weights;
  if (!(w[0] > w[1] && w[1] > w[2] && w[2] > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "ring weights must be strictly decreasing and positive");
  }
  if (cfg.working_size.width <= 0 || cfg.working_size.height <= 0) {
    throw Error(ErrorKind::InvalidArgument, "working size must be positive");
  }
  if (!(cfg.epsilon_log > 0.0 && cfg.epsilon_log < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon_log must lie in (0, 1)");
  }
  if (cfg.stride < 1) throw Error(ErrorKind::InvalidArgument, "stride must be >= 1");
}

ColorPlanes to_planes(const Image& image) {
  ColorPlanes planes{PlaneF(image.width(), image.height()), PlaneF(image.width(), image.height()),
                     PlaneF(image.width(), image.height())};
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const std::uint8_t* px = image.at(x, y);
      planes.red(x, y) = px[0];
      planes.green(x, y) = px[1];
      planes.blue(x, y) = px[2];
    }
  }
  return planes;
}

PlaneF resize_area(const PlaneF& plane, Size2i size) {
  if (plane.size() == size) return plane;
  const auto xt = area_taps(plane.width(), size.width);
  const auto yt = area_taps(plane.height(), size.height);
  PlaneD rows(size.width, plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    const float* src = plane.row(y);
    for (int x = 0; x < size.width; ++x) {
      double acc = 0.0;
      for (const Tap& t : xt[x]) acc += t.weight * src[t.index];
      rows(x, y) = acc;
    }
  }
  PlaneF out(size.width, size.height);
  for (int y = 0; y < size.height; ++y) {
    for (int x = 0; x < size.width; ++x) {
      double acc = 0.0;
      for (const Tap& t : yt[y]) acc += t.weight * rows(x, t.index);
      out(x, y) = static_cast<float>(acc);
    }
  }
  return out;
}

ColorPlanes resize_area(const ColorPlanes& planes, Size2i size) {
  return {resize_area(planes.red, size), resize_area(planes.green, size),
          resize_area(planes.blue, size)};
}

ColorPlanes resize_area(const Image& image, Size2i size) {
  if (image.size() == size) return to_planes(image);
  auto planes = area_resample<3>(image.bytes().data(), image.width(), image.height(), size,
                                 [](std::uint8_t v) { return static_cast<std::uint32_t>(v); });
  return {std::move(planes[0]), std::move(planes[1]), std::move(planes[2])};
}

BinaryMask resize_mask(const BinaryMask& mask, Size2i size) {
  if (mask.size() == size) return mask;
  const auto coverage = area_resample<1>(mask.values().data(), mask.width(), mask.height(), size,
                                         [](std::uint8_t v) { return static_cast<std::uint32_t>(v != 0); });
  BinaryMask out(size.width, size.height, 0);
  for (std::size_t i = 0; i < out.area(); ++i) out.values()[i] = coverage[0].values()[i] >= 0.5f ? 1 : 0;
  return out;
}

PlaneD resize_bilinear(const PlaneD& grid, Size2i size) {
  if (grid.size() == size) return grid;
  PlaneD out(size.width, size.height);
  const double sx = static_cast<double>(grid.width()) / size.width;
  const double sy = static_cast<double>(grid.height()) / size.height;
  std::vector<int> x0s(size.width), x1s(size.width);
  std::vector<double> fxs(size.width);
  for (int x = 0; x < size.width; ++x) {
    const double u = std::clamp((x + 0.5) * sx - 0.5, 0.0, grid.width() - 1.0);
    x0s[x] = static_cast<int>(u);
    x1s[x] = std::min(x0s[x] + 1, grid.width() - 1);
    fxs[x] = u - x0s[x];
  }
  std::vector<int> run_end(grid.width(), 0);
  for (int x = 0; x < size.width; ++x) run_end[x0s[x]] = x + 1;
  std::vector<double> blend(grid.width());
  for (int y = 0; y < size.height; ++y) {
    const double v = std::clamp((y + 0.5) * sy - 0.5, 0.0, grid.height() - 1.0);
    const int y0 = static_cast<int>(v);
    const int y1 = std::min(y0 + 1, grid.height() - 1);
    const double fy = v - y0;
    const double* r0 = grid.row(y0);
    const double* r1 = grid.row(y1);
    for (int x = 0; x < grid.width(); ++x) blend[x] = r0[x] + fy * (r1[x] - r0[x]);
    double* dst = out.row(y);
    // x0s is non-decreasing, so each source cell covers a run of outputs.
    for (int x = 0; x < size.width;) {
      const int x0 = x0s[x];
      const double a = blend[x0];
      const double d = blend[x1s[x]] - a;
      const int end = run_end[x0];
      for (; x < end; ++x) dst[x] = a + fxs[x] * d;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// AppearanceScanner

AppearanceScanner::AppearanceScanner(const ColorPlanes& image, const ContourRingSet& rings,
                                     const BinaryMask& hole, Point2i origin)
    : width_(image.width()), height_(image.height()), row_stride_(image.width()),
      origin_(origin), weights_(rings.weights) {
  const Size2i size{width_, height_};
  if (hole.size() != size) throw Error(ErrorKind::InvalidArgument, "hole size differs from image");
  for (const auto& ring : rings.rings) {
    if (ring.size() != size) throw Error(ErrorKind::InvalidArgument, "ring size differs from image");
  }
  if (!hole.contains(origin.x, origin.y)) {
    throw Error(ErrorKind::InvalidArgument, "descriptor origin outside the image");
  }
  red_ = image.red.values();
  green_ = image.green.values();
  blue_ = image.blue.values();
  valid_.resize(hole.area());
  for (std::size_t i = 0; i < valid_.size(); ++i) valid_[i] = hole.values()[i] ? 0.0f : 1.0f;

  for (int i = 0; i < 3; ++i) {
    const BinaryMask& ring = rings.rings[i];
    for (int y = 0; y < height_; ++y) {
      for (int x = 0; x < width_; ++x) {
        if (ring(x, y)) {
          ring_pixels_[i].push_back({x, y, image.red(x, y), image.green(x, y), image.blue(x, y)});
        }
      }
    }
  }
}

double AppearanceScanner::finish(const std::array<double, 3>& sums,
                                 const std::array<double, 3>& counts) const {
  double d = 0.0;
  bool any_ring = false;
  for (int i = 0; i < 3; ++i) {
    const double total = static_cast<double>(ring_pixels_[i].size());
    if (total == 0.0) continue;
    any_ring = true;
    // More than half of this ring lost its partners.
    if (counts[i] < 0.5 * total) return kInfiniteDistance;
    d += weights_[i] * (sums[i] / counts[i]);
  }
  return any_ring ? d : kInfiniteDistance;
}

double AppearanceScanner::distance_at(Point2i candidate) const {
  if (candidate == origin_) return 0.0;
  const auto& kernels = simd::active_kernels();
  const int dx = candidate.x - origin_.x, dy = candidate.y - origin_.y;
  std::array<double, 3> sums{};
  std::array<double, 3> counts{};
  for (int i = 0; i < 3; ++i) {
    double sum = 0.0;
    float count = 0.0f;
    for (const RingPixel& p : ring_pixels_[i]) {
      const int px = p.x + dx, py = p.y + dy;
      if (px < 0 || py < 0 || px >= width_ || py >= height_) continue;
      const std::size_t k = static_cast<std::size_t>(py) * row_stride_ + px;
      kernels.ring_accumulate(&red_[k], &green_[k], &blue_[k], &valid_[k], p.r, p.g, p.b, &sum,
                              &count, 1);
    }
    sums[i] = sum;
    counts[i] = count;
  }
  return finish(sums, counts);
}

PlaneD AppearanceScanner::distance_grid(int stride) const {
  if (stride < 1) throw Error(ErrorKind::InvalidArgument, "stride must be >= 1");
  PlaneD out(width_, height_, kInfiniteDistance);
  if (stride > 1) {
    // Grid anchored at the origin; other cells copy the grid point at or
    // before them.
    const int gx0 = origin_.x % stride, gy0 = origin_.y % stride;
    auto snap_x = [&](int x) { return x < gx0 ? gx0 : gx0 + ((x - gx0) / stride) * stride; };
    auto snap_y = [&](int y) { return y < gy0 ? gy0 : gy0 + ((y - gy0) / stride) * stride; };
    for (int y = gy0; y < height_; y += stride) {
      for (int x = gx0; x < width_; x += stride) out(x, y) = distance_at({x, y});
    }
    for (int y = 0; y < height_; ++y) {
      for (int x = 0; x < width_; ++x) out(x, y) = out(snap_x(x), snap_y(y));
    }
    return out;
  }

  const auto& kernels = simd::active_kernels();
  const std::size_t cells = static_cast<std::size_t>(width_) * height_;
  std::array<std::vector<double>, 3> sums;
  std::array<std::vector<float>, 3> counts;
  for (int i = 0; i < 3; ++i) {
    sums[i].assign(cells, 0.0);
    counts[i].assign(cells, 0.0f);
    for (const RingPixel& p : ring_pixels_[i]) {
      // Candidates whose partner for this pixel stays inside the image.
      const int cx_begin = std::max(0, origin_.x - p.x);
      const int cx_end = std::min(width_, origin_.x - p.x + width_);
      const int cy_begin = std::max(0, origin_.y - p.y);
      const int cy_end = std::min(height_, origin_.y - p.y + height_);
      if (cx_begin >= cx_end) continue;
      const std::size_t n = static_cast<std::size_t>(cx_end - cx_begin);
      for (int cy = cy_begin; cy < cy_end; ++cy) {
        const int py = p.y + cy - origin_.y;
        const std::size_t src = static_cast<std::size_t>(py) * row_stride_ +
                                static_cast<std::size_t>(p.x + cx_begin - origin_.x);
        const std::size_t dst = static_cast<std::size_t>(cy) * width_ + cx_begin;
        kernels.ring_accumulate(&red_[src], &green_[src], &blue_[src], &valid_[src], p.r, p.g, p.b,
                                &sums[i][dst], &counts[i][dst], n);
      }
    }
  }
  for (std::size_t k = 0; k < cells; ++k) {
    out.values()[k] = finish({sums[0][k], sums[1][k], sums[2][k]},
                             {counts[0][k], counts[1][k], counts[2][k]});
  }
  out(origin_.x, origin_.y) = 0.0;
  return out;
}

double appearance_distance(const ColorPlanes& image, const ContourRingSet& rings,
                           const BinaryMask& hole, Point2i origin, Point2i candidate) {
  return AppearanceScanner(image, rings, hole, origin).distance_at(candidate);
}

// ---------------------------------------------------------------------------
// Heatmap

PlaneD log_rescale(const PlaneD& distances, double epsilon_log) {
  double m = kInfiniteDistance, big = -kInfiniteDistance;
  for (double d : distances.values()) {
    if (std::isfinite(d)) {
      m = std::min(m, d);
      big = std::max(big, d);
    }
  }
  PlaneD out(distances.width(), distances.height(), 0.0);
  if (!std::isfinite(m)) return out;
  const double range = big - m;
  for (std::size_t k = 0; k < out.area(); ++k) {
    const double d = distances.values()[k];
    if (!std::isfinite(d)) continue;
    out.values()[k] = range > 0.0 ? -std::log(std::max((d - m) / range, epsilon_log)) : 1.0;
  }
  return out;
}

ConsistencyHeatmap compute_heatmap(const Image& image, const BinaryMask& instance_mask,
                                   const HeatmapConfig& cfg) {
  check(cfg);
  if (instance_mask.size() != image.size()) {
    throw Error(ErrorKind::InvalidArgument, "mask size differs from image");
  }

  ConsistencyHeatmap hm;
  hm.source_size = image.size();
  hm.computed_at = cfg.working_size;
  hm.source_center = mask_centroid(instance_mask);  // throws EmptyMask

  const Size2i work = cfg.working_size;
  const bool resized = work != image.size();
  const ColorPlanes planes = resize_area(image, work);
  BinaryMask mask = resize_mask(instance_mask, work);
  const double fx = static_cast<double>(work.width) / image.width();
  const double fy = static_cast<double>(work.height) / image.height();
  if (count_foreground(mask) == 0) {
    // Instance smaller than half a working cell: keep the cell holding it.
    mask(round_clamped((hm.source_center.x + 0.5) * fx - 0.5, work.width - 1),
         round_clamped((hm.source_center.y + 0.5) * fy - 0.5, work.height - 1)) = 1;
  }
  RingSpec spec{cfg.ring_widths, cfg.ring_weights};
  if (resized) {
    const double factor = 0.5 * (fx + fy);
    for (int& w : spec.widths) w = std::max(1, static_cast<int>(std::lround(w * factor)));
  }
  const Point2d c = mask_centroid(mask);
  hm.origin = {round_clamped(c.x, work.width - 1), round_clamped(c.y, work.height - 1)};

  const ContourRingSet rings = contour_rings(mask, spec);
  const AppearanceScanner scanner(planes, rings, mask, hm.origin);
  hm.distance = scanner.distance_grid(cfg.stride);

  std::size_t finite = 0;
  hm.min_distance = kInfiniteDistance;
  hm.max_distance = -kInfiniteDistance;
  for (std::size_t k = 0; k < hm.distance.area(); ++k) {
    const double d = hm.distance.values()[k];
    if (!std::isfinite(d)) continue;
    ++finite;
    hm.min_distance = std::min(hm.min_distance, d);
    hm.max_distance = std::max(hm.max_distance, d);
  }
  hm.degenerate = hm.max_distance == hm.min_distance;
  hm.all_infinite = finite <= 1;
  hm.working_value = log_rescale(hm.distance, cfg.epsilon_log);

  if (hm.all_infinite) {
    hm.value = PlaneD(image.width(), image.height(), 0.0);
    hm.value(round_clamped(hm.source_center.x, image.width() - 1),
             round_clamped(hm.source_center.y, image.height() - 1)) = 1.0;
  } else {
    hm.value = resize_bilinear(hm.working_value, image.size());
  }
  return hm;
}

ConsistencyHeatmap compute_heatmap_exact(const Image& image, const BinaryMask& instance_mask,
                                         const HeatmapConfig& cfg) {
  HeatmapConfig full = cfg;
  full.working_size = image.size();
  return compute_heatmap(image, instance_mask, full);
}

// ---------------------------------------------------------------------------
// Sampling

ProbabilityMap::ProbabilityMap(PlaneD probabilities) : p_(std::move(probabilities)) {
  cdf_.resize(p_.area());
  double acc = 0.0;
  for (std::size_t k = 0; k < p_.area(); ++k) {
    if (!(p_.values()[k] >= 0.0)) {
      throw Error(ErrorKind::DegenerateDistribution, "negative or NaN probability");
    }
    acc += p_.values()[k];
    cdf_[k] = acc;
  }
  if (!(acc > 0.0)) throw Error(ErrorKind::DegenerateDistribution, "probability map has no mass");
}

ProbabilityMap to_probability(const PlaneD& value, const BinaryMask* exclusion) {
  if (exclusion != nullptr && exclusion->size() != value.size()) {
    throw Error(ErrorKind::InvalidArgument, "exclusion size differs from heatmap");
  }
  PlaneD p = value;
  double total = 0.0;
  for (std::size_t k = 0; k < p.area(); ++k) {
    double& v = p.values()[k];
    if ((exclusion != nullptr && exclusion->values()[k]) || !(v > 0.0) || !std::isfinite(v)) v = 0.0;
    total += v;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::DegenerateDistribution, "all heatmap mass excluded");
  for (double& v : p.values()) v /= total;
  return ProbabilityMap(std::move(p));
}

ProbabilityMap to_probability(const ConsistencyHeatmap& hm, const BinaryMask* exclusion) {
  return to_probability(hm.value, exclusion);
}

Point2i sample_center(Rng& rng, const ProbabilityMap& pm) {
  const auto& cdf = pm.cumulative();
  const double u = uniform01(rng) * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  std::size_t k = static_cast<std::size_t>(it - cdf.begin());
  if (k >= cdf.size()) {
    // u rounded up to the total; take the last cell with mass.
    k = cdf.size() - 1;
    while (k > 0 && pm.p().values()[k] == 0.0) --k;
  }
  return {static_cast<int>(k % static_cast<std::size_t>(pm.width())),
          static_cast<int>(k / static_cast<std::size_t>(pm.width()))};
}

Point2i argmin_distance(const PlaneD& distance) {
  double best = kInfiniteDistance;
  Point2i at{-1, -1};
  for (int y = 0; y < distance.height(); ++y) {
    for (int x = 0; x < distance.width(); ++x) {
      if (distance(x, y) < best) {
        best = distance(x, y);
        at = {x, y};
      }
    }
  }
  return at;
}

Point2i argmax_value(const PlaneD& value) {
  double best = -kInfiniteDistance;
  Point2i at{-1, -1};
  for (int y = 0; y < value.height(); ++y) {
    for (int x = 0; x < value.width(); ++x) {
      if (value(x, y) > best) {
        best = value(x, y);
        at = {x, y};
      }
    }
  }
  return at;
}

double pearson(const PlaneD& a, const PlaneD& b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorKind::InvalidArgument, "pearson needs equally sized non-empty grids");
  }
  const double n = static_cast<double>(a.area());
  const double ma = std::accumulate(a.values().begin(), a.values().end(), 0.0) / n;
  const double mb = std::accumulate(b.values().begin(), b.values().end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < a.area(); ++k) {
    const double da = a.values()[k] - ma, db = b.values()[k] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return saa == sbb ? 1.0 : 0.0;
  return sab / std::sqrt(saa * sbb);
}

Image render_heatmap(const PlaneD& value, bool colormap) {
  double lo = kInfiniteDistance, hi = -kInfiniteDistance;
  for (double v : value.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  Image out(value.width(), value.height());
  for (int y = 0; y < value.height(); ++y) {
    for (int x = 0; x < value.width(); ++x) {
      const double t = hi > lo ? (value(x, y) - lo) / (hi - lo) : 1.0;
      std::uint8_t* px = out.at(x, y);
      if (!colormap) {
        px[0] = px[1] = px[2] = static_cast<std::uint8_t>(std::lround(255.0 * t));
        continue;
      }
      // Piecewise-linear blue -> cyan -> yellow -> red.
      const double r = std::clamp(1.5 - std::fabs(4.0 * t - 3.0), 0.0, 1.0);
      const double g = std::clamp(1.5 - std::fabs(4.0 * t - 2.0), 0.0, 1.0);
      const double b = std::clamp(1.5 - std::fabs(4.0 * t - 1.0), 0.0, 1.0);
      px[0] = static_cast<std::uint8_t>(std::lround(255.0 * r));
      px[1] = static_cast<std::uint8_t>(std::lround(255.0 * g));
      px[2] = static_cast<std::uint8_t>(std::lround(255.0 * b));
    }
  }
  return out;
}

}  // namespace instaboost
