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

#include "instaboost/core.hpp"

namespace instaboost {

struct InpaintConfig {
  int max_iterations = 2000;
  /// Stop once no hole value moves more than this in a sweep (0-255 scale).
  double convergence_epsilon = 0.1;
  /// Known pixels this close to the hole seed the initial guess and pad the
  /// solver window.
  int boundary_band = 2;
  /// Coarse-to-fine initialization at 1/4 scale.
  bool multiresolution = true;
};

struct InpaintResult {
  Image image;
  int iterations = 0;       // sweeps at the finest level
  bool converged = false;
  double last_change = 0.0;  // max per-channel change of the final sweep
};

/// Harmonic (diffusion) fill: every hole pixel converges to the mean of its
/// 4-neighbours. Pixels outside the hole are returned untouched. Failing to
/// converge within max_iterations is reported, not thrown.
InpaintResult inpaint(const Image& image, const BinaryMask& hole, const InpaintConfig& config = {});

/// Runs `sweeps` plain Jacobi sweeps on one float plane, restricted to
/// `hole`, and returns the max change of each sweep. Exposed for tests.
std::vector<double> jacobi_sweeps(PlaneF& plane, const BinaryMask& hole, int sweeps);

}  // namespace instaboost
