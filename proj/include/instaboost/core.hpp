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

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace instaboost {

/// Library version, MAJOR.MINOR.PATCH.
std::string_view version();

enum class ErrorKind {
  MalformedDocument,
  DanglingReference,
  IoFailure,
  ValidationFailure,
  DegenerateGeometry,
  EmptyMask,
  HoleCoversImage,
  FullyClipped,
  EmptyResult,
  DegenerateDistribution,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct Point2d {
  double x = 0.0;
  double y = 0.0;
};

struct Point2i {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point2i&, const Point2i&) = default;
};

struct Size2i {
  int width = 0;
  int height = 0;
  friend bool operator==(const Size2i&, const Size2i&) = default;
};

/// Axis-aligned box in pixel-edge coordinates: a pixel (i, j) covers
/// [i, i+1) x [j, j+1).
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Dense row-major 2-D grid.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(checked_area(width, height), fill) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  Size2i size() const noexcept { return {width_, height_}; }
  std::size_t area() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }

  T* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_; }
  const T* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_; }

  std::vector<T>& values() noexcept { return data_; }
  const std::vector<T>& values() const noexcept { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static std::size_t checked_area(int width, int height) {
    if (width < 0 || height < 0) {
      throw Error(ErrorKind::InvalidArgument, "negative grid dimensions");
    }
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// Foreground flag per pixel, 0 or 1.
using BinaryMask = Grid<std::uint8_t>;
using PlaneF = Grid<float>;
using PlaneD = Grid<double>;

std::size_t count_foreground(const BinaryMask& mask);

/// 8-bit interleaved RGB image.
class Image {
 public:
  Image() = default;
  Image(int width, int height, std::uint8_t fill = 0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  Size2i size() const noexcept { return {width_, height_}; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t* at(int x, int y) {
    return pixels_.data() + 3 * (static_cast<std::size_t>(y) * width_ + x);
  }
  const std::uint8_t* at(int x, int y) const {
    return pixels_.data() + 3 * (static_cast<std::size_t>(y) * width_ + x);
  }

  std::vector<std::uint8_t>& bytes() noexcept { return pixels_; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// The library's random source. Uniform draws go through uniform01 so
/// sequences do not depend on the standard library's distributions.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// SplitMix64 finalizer; used to derive independent per-item seeds.
std::uint64_t mix_seed(std::uint64_t value);

}  // namespace instaboost
