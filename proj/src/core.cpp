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
#include "instaboost/core.hpp"

#include <algorithm>

#ifndef INSTABOOST_VERSION
#define INSTABOOST_VERSION "0.0.0"
#endif

namespace instaboost {

std::string_view version() { return INSTABOOST_VERSION; }

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::ValidationFailure: return "ValidationFailure";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::EmptyMask: return "EmptyMask";
    case ErrorKind::HoleCoversImage: return "HoleCoversImage";
    case ErrorKind::FullyClipped: return "FullyClipped";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Image::Image(int width, int height, std::uint8_t fill)
    : width_(width), height_(height),
      pixels_(3 * static_cast<std::size_t>(std::max(width, 0)) *
                  static_cast<std::size_t>(std::max(height, 0)),
              fill) {
  if (width < 0 || height < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative image dimensions");
  }
}

std::size_t count_foreground(const BinaryMask& mask) {
  return static_cast<std::size_t>(
      std::count_if(mask.values().begin(), mask.values().end(), [](std::uint8_t v) { return v != 0; }));
}

std::uint64_t mix_seed(std::uint64_t value) {
  std::uint64_t z = value + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace instaboost
