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
#include "instaboost/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace instaboost {
namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::InvalidArgument, "config key '" + key + "': " + why);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) bad_key(key, "not a number: " + text);
    return v;
  } catch (const std::logic_error&) {
    bad_key(key, "not a number: " + text);
  }
}

long long parse_int(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) bad_key(key, "not an integer: " + text);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) bad_key(key, "not an unsigned integer: " + text);
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  bad_key(key, "not a boolean: " + text);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

template <class T, std::size_t N, class F>
std::array<T, N> parse_list(const std::string& key, const std::string& text, F parse) {
  const auto parts = split(text, ',');
  if (parts.size() != N) bad_key(key, "expected " + std::to_string(N) + " comma-separated values");
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = static_cast<T>(parse(key, parts[i]));
  return out;
}

Size2i parse_size(const std::string& key, const std::string& text) {
  const auto parts = split(text, 'x');
  if (parts.size() != 2) bad_key(key, "expected WIDTHxHEIGHT");
  return {static_cast<int>(parse_int(key, parts[0])), static_cast<int>(parse_int(key, parts[1]))};
}

using Setter = std::function<void(AugmentConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"mode", [](AugmentConfig& c, const std::string&, const std::string& v) { c.mode = parse_mode(v); }},
      {"apply_probability",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.apply_probability = parse_double(k, v);
       }},
      {"max_instances_per_image",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         if (v.empty() || v == "none") c.max_instances_per_image.reset();
         else c.max_instances_per_image = static_cast<int>(parse_int(k, v));
       }},
      {"feather_radius",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.feather_radius = parse_double(k, v);
       }},
      {"seed", [](AugmentConfig& c, const std::string& k, const std::string& v) { c.seed = parse_u64(k, v); }},
      {"forbid_overlap",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.forbid_overlap = parse_bool(k, v);
       }},
      {"alpha_threshold",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.alpha_threshold = parse_double(k, v);
       }},
      {"min_visible_pixels",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.min_visible_pixels = static_cast<int>(parse_int(k, v));
       }},
      {"jitter.translation_ratio",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.jitter.translation_ratio = parse_double(k, v);
       }},
      {"jitter.scale_min",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.jitter.scale_range.lo = parse_double(k, v);
       }},
      {"jitter.scale_max",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.jitter.scale_range.hi = parse_double(k, v);
       }},
      {"jitter.rotation_min_deg",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.jitter.rotation_range_deg.lo = parse_double(k, v);
       }},
      {"jitter.rotation_max_deg",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.jitter.rotation_range_deg.hi = parse_double(k, v);
       }},
      {"heatmap.ring_widths",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.heatmap.ring_widths = parse_list<int, 3>(k, v, parse_int);
       }},
      {"heatmap.ring_weights",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.heatmap.ring_weights = parse_list<double, 3>(k, v, parse_double);
       }},
      {"heatmap.working_size",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.heatmap.working_size = parse_size(k, v);
       }},
      {"heatmap.epsilon_log",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.heatmap.epsilon_log = parse_double(k, v);
       }},
      {"heatmap.stride",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.heatmap.stride = static_cast<int>(parse_int(k, v));
       }},
      {"inpaint.max_iterations",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.inpaint.max_iterations = static_cast<int>(parse_int(k, v));
       }},
      {"inpaint.convergence_epsilon",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.inpaint.convergence_epsilon = parse_double(k, v);
       }},
      {"inpaint.boundary_band",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.inpaint.boundary_band = static_cast<int>(parse_int(k, v));
       }},
      {"inpaint.multiresolution",
       [](AugmentConfig& c, const std::string& k, const std::string& v) {
         c.inpaint.multiresolution = parse_bool(k, v);
       }},
  };
  return table;
}

// Renders a JSON scalar or array into the flat string form.
std::string flatten_value(const std::string& key, const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  if (v.is_null()) return "none";
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",";
      out += flatten_value(key, v[i]);
    }
    return out;
  }
  bad_key(key, "unsupported value");
}

void flatten(const Json& obj, const std::string& prefix, std::map<std::string, std::string>& out) {
  if (!obj.is_object()) bad_key(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      flatten(v, key, out);
    } else if (key == "heatmap.working_size" && v.is_array()) {
      if (v.size() != 2) bad_key(key, "expected [width, height]");
      out[key] = flatten_value(key, v[0]) + "x" + flatten_value(key, v[1]);
    } else {
      out[key] = flatten_value(key, v);
    }
  }
}

}  // namespace

void apply_overrides(AugmentConfig& cfg, const std::map<std::string, std::string>& overrides) {
  const auto& table = setters();
  for (const auto& [key, value] : overrides) {
    const auto it = table.find(key);
    if (it == table.end()) bad_key(key, "unknown key");
    it->second(cfg, key, value);
  }
  check(cfg);
}

std::vector<std::string> override_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

AugmentConfig augment_config_from_json(const Json& document) {
  std::map<std::string, std::string> flat;
  flatten(document, "", flat);
  AugmentConfig cfg;
  apply_overrides(cfg, flat);
  return cfg;
}

Json augment_config_to_json(const AugmentConfig& c) {
  Json j;
  j["mode"] = std::string(to_string(c.mode));
  j["apply_probability"] = c.apply_probability;
  j["max_instances_per_image"] =
      c.max_instances_per_image ? Json(*c.max_instances_per_image) : Json(nullptr);
  j["feather_radius"] = c.feather_radius;
  j["seed"] = c.seed;
  j["forbid_overlap"] = c.forbid_overlap;
  j["alpha_threshold"] = c.alpha_threshold;
  j["min_visible_pixels"] = c.min_visible_pixels;
  j["jitter"] = {{"translation_ratio", c.jitter.translation_ratio},
                 {"scale_min", c.jitter.scale_range.lo},
                 {"scale_max", c.jitter.scale_range.hi},
                 {"rotation_min_deg", c.jitter.rotation_range_deg.lo},
                 {"rotation_max_deg", c.jitter.rotation_range_deg.hi}};
  j["heatmap"] = {{"ring_widths", c.heatmap.ring_widths},
                  {"ring_weights", c.heatmap.ring_weights},
                  {"working_size", {c.heatmap.working_size.width, c.heatmap.working_size.height}},
                  {"epsilon_log", c.heatmap.epsilon_log},
                  {"stride", c.heatmap.stride}};
  j["inpaint"] = {{"max_iterations", c.inpaint.max_iterations},
                  {"convergence_epsilon", c.inpaint.convergence_epsilon},
                  {"boundary_band", c.inpaint.boundary_band},
                  {"multiresolution", c.inpaint.multiresolution}};
  return j;
}

AugmentConfig load_augment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open config " + path.string());
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedDocument, "config " + path.string() + ": " + e.what());
  }
  return augment_config_from_json(doc);
}

}  // namespace instaboost
