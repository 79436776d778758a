/**
 * Copyright 2026 The odl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <map>
#include <mutex>
#include <stdexcept>

#include "odl/dsdl/dsdl.hpp"

namespace odl::dsdl {
namespace {

constexpr std::string_view kClassification = R"($dsdl-version: "1.0"
defs:
  ImageClassificationSample:
    $def: record
    fields:
      media: Image
      label: Label[ClassDom]
)";

constexpr std::string_view kObjectDetection = R"($dsdl-version: "1.0"
defs:
  BBoxAnn:
    $def: record
    fields:
      bbox: BBox
      label: Label[ClassDom]
      iscrowd: Bool
      difficult: Bool
    optional: [iscrowd, difficult]
  ObjectDetSample:
    $def: record
    fields:
      media: Image
      objects: List[BBoxAnn]
)";

constexpr std::string_view kSemanticSegmentation = R"($dsdl-version: "1.0"
defs:
  SegmentAnn:
    $def: record
    fields:
      polygon: Polygon
      label: Label[ClassDom]
  SegmentationSample:
    $def: record
    fields:
      media: Image
      objects: List[SegmentAnn]
)";

constexpr std::string_view kOcr = R"($dsdl-version: "1.0"
defs:
  TextAnn:
    $def: record
    fields:
      polygon: Polygon
      text: Str
  OCRSample:
    $def: record
    fields:
      media: Image
      objects: List[TextAnn]
)";

}  // namespace

const std::vector<Template>& template_catalog() {
  static const std::vector<Template> catalog = {
      {"classification", kClassification},
      {"object-detection", kObjectDetection},
      {"semantic-segmentation", kSemanticSegmentation},
      {"ocr", kOcr},
  };
  return catalog;
}

const DsdlDocument* find_template(std::string_view name) {
  static const std::map<std::string, DsdlDocument, std::less<>> parsed = [] {
    std::map<std::string, DsdlDocument, std::less<>> out;
    for (const auto& t : template_catalog()) {
      auto result = parse_document(t.text, "<template:" + std::string(t.name) + ">");
      if (!result.ok()) throw std::logic_error("built-in template does not parse: " + std::string(t.name));
      out.emplace(std::string(t.name), std::move(*result.document));
    }
    return out;
  }();
  auto it = parsed.find(name);
  return it == parsed.end() ? nullptr : &it->second;
}

}  // namespace odl::dsdl
