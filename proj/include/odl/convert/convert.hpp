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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "odl/engine/dataset.hpp"

// Importers from legacy detection formats into the object-detection
// template. Both produce samples whose media locators are relative to the
// parent of the images directory, which becomes the dataset root.
namespace odl::convert {

struct VocSource {
  std::filesystem::path annotations_dir;
  std::filesystem::path images_dir;
  // Explicit class order. When absent, classes are numbered by first
  // appearance over the XML files in lexicographic filename order.
  std::optional<std::vector<std::string>> class_list;
};

// One sample per XML file. Boxes convert without the +1 pixel adjustment:
// [xmin, ymin, xmax - xmin, ymax - ymin]. VOC's `difficult` flag is kept
// as an optional Bool. Throws ConversionError naming the offending file.
std::shared_ptr<const engine::SampleSet> import_voc(const VocSource& src);

struct CocoSource {
  std::filesystem::path instances_json;
  std::filesystem::path images_dir;
};

// Domain ordered by ascending category id; samples by ascending image id,
// including images without annotations. Boxes pass through unchanged and
// `iscrowd` becomes a Bool. Segmentation data is ignored.
std::shared_ptr<const engine::SampleSet> import_coco(const CocoSource& src);

}  // namespace odl::convert
