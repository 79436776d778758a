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

#include <algorithm>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "common.hpp"
#include "odl/convert/convert.hpp"

namespace odl::convert {

namespace fs = std::filesystem;
using detail::conversion_error;
using nlohmann::json;

namespace {

const json& array_field(const json& doc, const char* key, const std::string& where) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) conversion_error(where, std::string("missing '") + key + "' array");
  return *it;
}

std::int64_t id_of(const json& item, const char* key, const std::string& where) {
  const auto it = item.find(key);
  if (it == item.end() || !it->is_number_integer()) {
    conversion_error(where, std::string("entry without integer '") + key + "'");
  }
  return it->get<std::int64_t>();
}

}  // namespace

std::shared_ptr<const engine::SampleSet> import_coco(const CocoSource& src) {
  const auto where = src.instances_json.string();
  std::ifstream in(src.instances_json, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot open " + where);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    conversion_error(where, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) conversion_error(where, "top level must be an object");

  std::map<std::int64_t, std::string> categories;
  for (const auto& c : array_field(doc, "categories", where)) {
    const auto id = id_of(c, "id", where);
    if (!c.contains("name") || !c["name"].is_string()) conversion_error(where, "category without a name");
    if (!categories.emplace(id, c["name"].get<std::string>()).second) {
      conversion_error(where, "duplicate category id " + std::to_string(id));
    }
  }
  std::vector<std::string> classes;
  for (const auto& [id, name] : categories) {
    if (std::find(classes.begin(), classes.end(), name) != classes.end()) {
      conversion_error(where, "duplicate category name '" + name + "'");
    }
    classes.push_back(name);
  }

  std::map<std::int64_t, std::string> images;  // id -> file_name
  for (const auto& img : array_field(doc, "images", where)) {
    const auto id = id_of(img, "id", where);
    if (!img.contains("file_name") || !img["file_name"].is_string()) {
      conversion_error(where, "image " + std::to_string(id) + " has no file_name");
    }
    if (!images.emplace(id, img["file_name"].get<std::string>()).second) {
      conversion_error(where, "duplicate image id " + std::to_string(id));
    }
  }

  std::map<std::int64_t, yaml::Sequence> objects;
  for (const auto& ann : array_field(doc, "annotations", where)) {
    const auto image_id = id_of(ann, "image_id", where);
    const auto category_id = id_of(ann, "category_id", where);
    if (images.count(image_id) == 0) {
      conversion_error(where, "annotation references unknown image id " + std::to_string(image_id));
    }
    const auto cat = categories.find(category_id);
    if (cat == categories.end()) {
      conversion_error(where, "annotation references unknown category id " + std::to_string(category_id));
    }
    const auto bbox = ann.find("bbox");
    if (bbox == ann.end() || !bbox->is_array() || bbox->size() != 4 ||
        !std::all_of(bbox->begin(), bbox->end(), [](const json& v) { return v.is_number(); })) {
      conversion_error(where, "annotation on image " + std::to_string(image_id) + " has a malformed bbox");
    }
    const double w = (*bbox)[2].get<double>();
    const double h = (*bbox)[3].get<double>();
    if (w < 0 || h < 0) conversion_error(where, "negative bbox extent on image " + std::to_string(image_id));
    bool crowd = false;
    if (const auto it = ann.find("iscrowd"); it != ann.end()) {
      if (!it->is_number_integer() && !it->is_boolean()) conversion_error(where, "iscrowd must be 0 or 1");
      crowd = it->is_boolean() ? it->get<bool>() : it->get<std::int64_t>() != 0;
    }
    objects[image_id].emplace_back(yaml::Mapping{
        {"bbox", detail::bbox_node((*bbox)[0].get<double>(), (*bbox)[1].get<double>(), w, h), {}},
        {"label", yaml::Node(cat->second), {}},
        {"iscrowd", yaml::Node(crowd), {}}});
  }

  const auto schema = detail::detection_schema(classes.empty() ? std::vector<std::string>{"object"} : classes);
  const auto dir = fs::absolute(src.images_dir).lexically_normal();
  const auto prefix = (dir.has_filename() ? dir.filename() : dir.parent_path().filename()).string();
  const auto root = dir.has_filename() ? dir.parent_path() : dir.parent_path().parent_path();

  std::vector<dsdl::Sample> samples;
  for (auto& [id, file_name] : images) {
    yaml::Node raw(yaml::Mapping{{"media", yaml::Node(prefix + "/" + file_name), {}},
                                 {"objects", yaml::Node(std::move(objects[id])), {}}});
    samples.push_back(detail::checked_sample(raw, schema, where + " image " + std::to_string(id)));
  }
  Diagnostics warnings;
  if (samples.empty()) {
    warnings.push_back(Diagnostic::warning(ErrorCode::EmptyDataset, "no images in " + where));
  }
  return std::make_shared<engine::SampleSet>(schema, std::move(samples), root, "coco:" + where,
                                             std::move(warnings));
}

}  // namespace odl::convert
