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
#include "instaboost/inpaint.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "instaboost/maskops.hpp"
#include "instaboost/simd/kernels.hpp"

namespace instaboost {
namespace {

constexpr int kCoarseFactor = 4;
// Below this hole extent a direct solve is cheap enough.
constexpr int kMinMultiresExtent = 16;

struct Window {
  int x0, y0, x1, y1;  // [x0, x1) x [y0, y1) in image pixels
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
};

Window hole_window(const BinaryMask& hole, int margin) {
  const BBox box = mask_to_bbox(hole);
  return {std::max(0, static_cast<int>(box.x) - margin), std::max(0, static_cast<int>(box.y) - margin),
          std::min(hole.width(), static_cast<int>(box.x + box.w) + margin),
          std::min(hole.height(), static_cast<int>(box.y + box.h) + margin)};
}

// Jacobi iteration on a window padded by one ghost cell per side. Ghost
// cells outside the image mirror their inner neighbour (zero flux), ghost
// cells inside the image hold known pixels and never change.
class JacobiWindow {
 public:
  JacobiWindow(const Window& win, Size2i image_size, const BinaryMask& hole, int channels)
      : win_(win), image_(image_size), stride_(win.width() + 2),
        rows_(win.height() + 2), weights_(static_cast<std::size_t>(stride_) * rows_, 0.0f) {
    for (int c = 0; c < channels; ++c) {
      front_.emplace_back(weights_.size(), 0.0f);
    }
    for (int y = win.y0; y < win.y1; ++y) {
      for (int x = win.x0; x < win.x1; ++x) {
        weights_[cell(x, y)] = hole(x, y) ? 1.0f : 0.0f;
      }
    }
  }

  std::size_t cell(int x, int y) const {
    return static_cast<std::size_t>(y - win_.y0 + 1) * stride_ + static_cast<std::size_t>(x - win_.x0 + 1);
  }

  /// Loads channel values for the window and its ghost ring.
  template <class Fn>
  void load(int channel, Fn&& value_at) {
    auto& buf = front_[channel];
    for (int y = win_.y0 - 1; y <= win_.y1; ++y) {
      for (int x = win_.x0 - 1; x <= win_.x1; ++x) {
        const int cx = std::clamp(x, 0, image_.width - 1);
        const int cy = std::clamp(y, 0, image_.height - 1);
        buf[cell(x, y)] = value_at(cx, cy);
      }
    }
  }

  float& at(int channel, int x, int y) { return front_[channel][cell(x, y)]; }

  /// One sweep over every channel; returns the largest change.
  float sweep() {
    const auto& kernels = simd::active_kernels();
    float max_change = 0.0f;
    back_.resize(front_.size());
    for (std::size_t c = 0; c < front_.size(); ++c) {
      auto& src = front_[c];
      auto& dst = back_[c];
      dst = src;
      for (int r = 1; r <= win_.height(); ++r) {
        const std::size_t row = static_cast<std::size_t>(r) * stride_ + 1;
        const float change =
            kernels.jacobi_row(src.data() + row - stride_, src.data() + row, src.data() + row + stride_,
                               weights_.data() + row, dst.data() + row, static_cast<std::size_t>(win_.width()));
        max_change = std::max(max_change, change);
      }
      refresh_ghosts(dst);
      std::swap(src, dst);
    }
    return max_change;
  }

 private:
  void refresh_ghosts(std::vector<float>& buf) const {
    const int w = win_.width(), h = win_.height();
    auto idx = [&](int gx, int gy) { return static_cast<std::size_t>(gy) * stride_ + gx; };
    if (win_.x0 == 0) {
      for (int gy = 1; gy <= h; ++gy) buf[idx(0, gy)] = buf[idx(1, gy)];
    }
    if (win_.x1 == image_.width) {
      for (int gy = 1; gy <= h; ++gy) buf[idx(w + 1, gy)] = buf[idx(w, gy)];
    }
    if (win_.y0 == 0) {
      for (int gx = 0; gx < stride_; ++gx) buf[idx(gx, 0)] = buf[idx(gx, 1)];
    }
    if (win_.y1 == image_.height) {
      for (int gx = 0; gx < stride_; ++gx) buf[idx(gx, h + 1)] = buf[idx(gx, h)];
    }
  }

  Window win_;
  Size2i image_;
  int stride_;
  int rows_;
  std::vector<float> weights_;
  std::vector<std::vector<float>> front_;
  std::vector<std::vector<float>> back_;
};

using Planes = std::array<PlaneF, 3>;

struct SolveStats {
  int iterations = 0;
  bool converged = false;
  double last_change = 0.0;
};

SolveStats solve(Planes& planes, const BinaryMask& hole, const InpaintConfig& cfg);

// Initial guess from a 1/4-scale solve. Returns false when the coarse
// problem has no known pixels.
bool coarse_initialize(Planes& planes, const BinaryMask& hole, const InpaintConfig& cfg) {
  const int w = planes[0].width(), h = planes[0].height();
  const int cw = (w + kCoarseFactor - 1) / kCoarseFactor;
  const int ch = (h + kCoarseFactor - 1) / kCoarseFactor;
  Planes coarse{PlaneF(cw, ch), PlaneF(cw, ch), PlaneF(cw, ch)};
  BinaryMask coarse_hole(cw, ch, 0);
  for (int cy = 0; cy < ch; ++cy) {
    for (int cx = 0; cx < cw; ++cx) {
      std::array<double, 3> sum{};
      int known = 0;
      bool any_hole = false;
      for (int y = cy * kCoarseFactor; y < std::min(h, (cy + 1) * kCoarseFactor); ++y) {
        for (int x = cx * kCoarseFactor; x < std::min(w, (cx + 1) * kCoarseFactor); ++x) {
          if (hole(x, y)) {
            any_hole = true;
          } else {
            for (int c = 0; c < 3; ++c) sum[c] += planes[c](x, y);
            ++known;
          }
        }
      }
      coarse_hole(cx, cy) = any_hole ? 1 : 0;
      for (int c = 0; c < 3; ++c) {
        coarse[c](cx, cy) = known ? static_cast<float>(sum[c] / known) : 0.0f;
      }
    }
  }
  if (count_foreground(coarse_hole) == coarse_hole.area()) return false;
  solve(coarse, coarse_hole, cfg);

  for (int y = 0; y < h; ++y) {
    const double v = std::clamp((y + 0.5) / kCoarseFactor - 0.5, 0.0, static_cast<double>(ch - 1));
    const int v0 = static_cast<int>(v);
    const int v1 = std::min(v0 + 1, ch - 1);
    const float fy = static_cast<float>(v - v0);
    for (int x = 0; x < w; ++x) {
      if (!hole(x, y)) continue;
      const double u = std::clamp((x + 0.5) / kCoarseFactor - 0.5, 0.0, static_cast<double>(cw - 1));
      const int u0 = static_cast<int>(u);
      const int u1 = std::min(u0 + 1, cw - 1);
      const float fx = static_cast<float>(u - u0);
      for (int c = 0; c < 3; ++c) {
        const PlaneF& p = coarse[c];
        const float top = p(u0, v0) + fx * (p(u1, v0) - p(u0, v0));
        const float bottom = p(u0, v1) + fx * (p(u1, v1) - p(u0, v1));
        planes[c](x, y) = top + fy * (bottom - top);
      }
    }
  }
  return true;
}

// Initial guess: mean of the known pixels within the boundary band.
void band_initialize(Planes& planes, const BinaryMask& hole, const Window& win, int band) {
  const BinaryMask near = dilate(hole, std::max(1, band));
  std::array<double, 3> sum{};
  std::size_t n = 0;
  for (int y = win.y0; y < win.y1; ++y) {
    for (int x = win.x0; x < win.x1; ++x) {
      if (near(x, y) && !hole(x, y)) {
        for (int c = 0; c < 3; ++c) sum[c] += planes[c](x, y);
        ++n;
      }
    }
  }
  for (int y = win.y0; y < win.y1; ++y) {
    for (int x = win.x0; x < win.x1; ++x) {
      if (!hole(x, y)) continue;
      for (int c = 0; c < 3; ++c) planes[c](x, y) = n ? static_cast<float>(sum[c] / n) : 0.0f;
    }
  }
}

SolveStats solve(Planes& planes, const BinaryMask& hole, const InpaintConfig& cfg) {
  const Window win = hole_window(hole, std::max(1, cfg.boundary_band));
  const bool large = std::max(win.width(), win.height()) >= kMinMultiresExtent;
  if (!(cfg.multiresolution && large && coarse_initialize(planes, hole, cfg))) {
    band_initialize(planes, hole, win, cfg.boundary_band);
  }

  const Size2i size = planes[0].size();
  JacobiWindow jw(win, size, hole, 3);
  for (int c = 0; c < 3; ++c) {
    jw.load(c, [&](int x, int y) { return planes[c](x, y); });
  }
  SolveStats stats;
  while (stats.iterations < cfg.max_iterations) {
    stats.last_change = jw.sweep();
    ++stats.iterations;
    if (stats.last_change <= cfg.convergence_epsilon) {
      stats.converged = true;
      break;
    }
  }
  for (int y = win.y0; y < win.y1; ++y) {
    for (int x = win.x0; x < win.x1; ++x) {
      if (!hole(x, y)) continue;
      for (int c = 0; c < 3; ++c) planes[c](x, y) = jw.at(c, x, y);
    }
  }
  return stats;
}

}  // namespace

InpaintResult inpaint(const Image& image, const BinaryMask& hole, const InpaintConfig& config) {
  if (config.max_iterations <= 0) throw Error(ErrorKind::InvalidArgument, "max_iterations must be > 0");
  if (config.convergence_epsilon < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "convergence_epsilon must be >= 0");
  }
  if (hole.size() != image.size()) throw Error(ErrorKind::InvalidArgument, "hole size differs from image");
  const std::size_t holes = count_foreground(hole);
  InpaintResult result;
  result.image = image;
  if (holes == 0) {
    result.converged = true;
    return result;
  }
  if (holes == hole.area()) throw Error(ErrorKind::HoleCoversImage, "no known pixels to diffuse from");

  Planes planes{PlaneF(image.width(), image.height()), PlaneF(image.width(), image.height()),
                PlaneF(image.width(), image.height())};
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const std::uint8_t* px = image.at(x, y);
      for (int c = 0; c < 3; ++c) planes[c](x, y) = px[c];
    }
  }
  const SolveStats stats = solve(planes, hole, config);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!hole(x, y)) continue;
      std::uint8_t* px = result.image.at(x, y);
      for (int c = 0; c < 3; ++c) {
        px[c] = static_cast<std::uint8_t>(std::clamp(std::lround(planes[c](x, y)), 0L, 255L));
      }
    }
  }
  result.iterations = stats.iterations;
  result.converged = stats.converged;
  result.last_change = stats.last_change;
  return result;
}

std::vector<double> jacobi_sweeps(PlaneF& plane, const BinaryMask& hole, int sweeps) {
  if (plane.size() != hole.size()) throw Error(ErrorKind::InvalidArgument, "hole size differs from plane");
  std::vector<double> changes;
  if (count_foreground(hole) == 0) return changes;
  const Window win{0, 0, plane.width(), plane.height()};
  JacobiWindow jw(win, plane.size(), hole, 1);
  jw.load(0, [&](int x, int y) { return plane(x, y); });
  for (int i = 0; i < sweeps; ++i) changes.push_back(jw.sweep());
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) plane(x, y) = jw.at(0, x, y);
  }
  return changes;
}

}  // namespace instaboost
