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

#include <filesystem>
#include <map>
#include <string>

#include "instaboost/pipeline.hpp"

namespace instaboost {

/// JSON config with nested "jitter", "heatmap" and "inpaint" objects.
/// Missing keys keep their defaults; unknown keys raise InvalidArgument
/// naming the key.
AugmentConfig augment_config_from_json(const Json& document);
Json augment_config_to_json(const AugmentConfig& cfg);
AugmentConfig load_augment_config(const std::filesystem::path& path);

/// Flat string overrides such as {"mode": "random_jitter",
/// "jitter.scale_min": "0.9", "heatmap.working_size": "180x120"}.
/// List values are comma separated.
void apply_overrides(AugmentConfig& cfg, const std::map<std::string, std::string>& overrides);

/// Every key accepted by apply_overrides.
std::vector<std::string> override_keys();

}  // namespace instaboost
