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

// COCO-style instance segmentation datasets: parsing, serialization,
// validation and the run-length mask encoding used by the format.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "instaboost/core.hpp"

namespace instaboost {

using Json = nlohmann::json;

/// Column-major run-length mask. Runs alternate background/foreground and
/// start with background, as in the COCO format.
struct RleMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint32_t> counts;
  /// Set when the counts arrived (or should leave) in the compact string
  /// form; kept verbatim so round trips are byte-exact.
  std::optional<std::string> compressed;

  friend bool operator==(const RleMask&, const RleMask&) = default;
};

RleMask rle_encode(const BinaryMask& mask, bool compressed = true);
BinaryMask rle_decode(const RleMask& rle);
std::uint64_t rle_area(const RleMask& rle);

/// COCO compact string codec for run counts.
std::string rle_counts_to_string(const std::vector<std::uint32_t>& counts);
std::vector<std::uint32_t> rle_counts_from_string(const std::string& text);

/// Flat x0,y0,x1,y1,... vertex list in pixel-edge coordinates.
using Polygon = std::vector<double>;

struct Segmentation {
  std::vector<Polygon> polygons;
  std::optional<RleMask> rle;

  bool is_rle() const noexcept { return rle.has_value(); }
  friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

struct ImageRecord {
  std::int64_t id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
  Json extra = Json::object();

  friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

struct InstanceAnnotation {
  std::int64_t id = 0;
  std::int64_t image_id = 0;
  std::int64_t category_id = 0;
  Segmentation segmentation;
  BBox bbox;
  double area = 0.0;
  bool iscrowd = false;
  Json extra = Json::object();

  friend bool operator==(const InstanceAnnotation&, const InstanceAnnotation&) = default;
};

struct Category {
  std::int64_t id = 0;
  std::string name;
  Json extra = Json::object();

  friend bool operator==(const Category&, const Category&) = default;
};

/// Immutable dataset plus an image -> annotations index. Construction never
/// throws on dangling references; parse_dataset and validate report them.
class DatasetIndex {
 public:
  DatasetIndex() = default;
  DatasetIndex(std::vector<ImageRecord> images, std::vector<InstanceAnnotation> annotations,
               std::vector<Category> categories, Json extra = Json::object());

  const std::vector<ImageRecord>& images() const noexcept { return images_; }
  const std::vector<InstanceAnnotation>& annotations() const noexcept { return annotations_; }
  const std::vector<Category>& categories() const noexcept { return categories_; }
  /// Top-level document keys other than images/annotations/categories.
  const Json& extra() const noexcept { return extra_; }

  const ImageRecord* find_image(std::int64_t id) const;
  const InstanceAnnotation* find_annotation(std::int64_t id) const;
  /// Annotation ids belonging to an image, in document order.
  const std::vector<std::int64_t>& annotation_ids_for(std::int64_t image_id) const;
  std::vector<InstanceAnnotation> annotations_for(std::int64_t image_id) const;
  std::map<std::int64_t, std::string> category_names() const;

  /// Field equality ignoring record order.
  bool same_content(const DatasetIndex& other) const;

 private:
  std::vector<ImageRecord> images_;
  std::vector<InstanceAnnotation> annotations_;
  std::vector<Category> categories_;
  Json extra_ = Json::object();
  std::map<std::int64_t, std::size_t> image_pos_;
  std::map<std::int64_t, std::size_t> annotation_pos_;
  std::map<std::int64_t, std::vector<std::int64_t>> by_image_;
};

DatasetIndex dataset_from_json(const Json& document);
Json dataset_to_json(const DatasetIndex& index);

/// Loads a COCO annotation file. Throws MalformedDocument or
/// DanglingReference; the message names the offending record.
DatasetIndex parse_dataset(const std::filesystem::path& annotation_file);
void serialize_dataset(const DatasetIndex& index, const std::filesystem::path& out);

InstanceAnnotation annotation_from_json(const Json& record);
Json annotation_to_json(const InstanceAnnotation& ann);

enum class IssueKind {
  InvalidImage,
  DuplicateId,
  DanglingImage,
  DanglingCategory,
  DegeneratePolygon,
  BBoxOutOfBounds,
  NonPositiveArea,
  RleSizeMismatch,
  EmptySegmentation,
};

struct ValidationIssue {
  IssueKind kind;
  std::string record;  // "image" / "annotation" / "category"
  std::int64_t id = 0;
  std::string message;
};

using ValidationReport = std::vector<ValidationIssue>;

ValidationReport validate(const DatasetIndex& index);
std::string to_string(IssueKind kind);

}  // namespace instaboost
