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
#include <charconv>
#include <cmath>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "common.hpp"
#include "odl/convert/convert.hpp"

namespace odl::convert {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;
using detail::conversion_error;

namespace {

struct VocObject {
  std::string name;
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  std::optional<bool> difficult;
};

struct VocFile {
  std::string where;
  std::string filename;
  std::vector<VocObject> objects;
};

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

double number(const pt::ptree& node, const std::string& key, const std::string& where) {
  const auto child = node.get_optional<std::string>(key);
  if (!child) conversion_error(where, "missing <" + key + ">");
  const auto text = trimmed(*child);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    conversion_error(where, "<" + key + "> is not a number: '" + text + "'");
  }
  return value;
}

VocFile read_voc(const fs::path& xml) {
  VocFile out;
  out.where = xml.string();
  pt::ptree tree;
  try {
    pt::read_xml(xml.string(), tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    conversion_error(out.where, std::string("malformed XML: ") + e.message());
  }
  const auto annotation = tree.get_child_optional("annotation");
  if (!annotation) conversion_error(out.where, "missing <annotation> root");

  const auto size = annotation->get_child_optional("size");
  if (!size) conversion_error(out.where, "missing <size> block");
  if (number(*size, "width", out.where) <= 0 || number(*size, "height", out.where) <= 0) {
    conversion_error(out.where, "image size must be positive");
  }

  out.filename = trimmed(annotation->get<std::string>("filename", ""));
  if (out.filename.empty()) out.filename = xml.stem().string() + ".jpg";

  for (const auto& [tag, node] : *annotation) {
    if (tag != "object") continue;
    VocObject obj;
    obj.name = trimmed(node.get<std::string>("name", ""));
    if (obj.name.empty()) conversion_error(out.where, "object without <name>");
    const auto box = node.get_child_optional("bndbox");
    if (!box) conversion_error(out.where, "object '" + obj.name + "' has no <bndbox>");
    obj.xmin = number(*box, "xmin", out.where);
    obj.ymin = number(*box, "ymin", out.where);
    obj.xmax = number(*box, "xmax", out.where);
    obj.ymax = number(*box, "ymax", out.where);
    if (obj.xmax < obj.xmin) conversion_error(out.where, "xmax < xmin for object '" + obj.name + "'");
    if (obj.ymax < obj.ymin) conversion_error(out.where, "ymax < ymin for object '" + obj.name + "'");
    if (node.get_child_optional("difficult")) obj.difficult = number(node, "difficult", out.where) != 0;
    out.objects.push_back(std::move(obj));
  }
  return out;
}

}  // namespace

std::shared_ptr<const engine::SampleSet> import_voc(const VocSource& src) {
  std::error_code ec;
  if (!fs::is_directory(src.annotations_dir, ec)) {
    throw Error(ErrorCode::NotFound, "annotations directory " + src.annotations_dir.string() + " does not exist");
  }
  std::vector<fs::path> xmls;
  for (const auto& entry : fs::directory_iterator(src.annotations_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") xmls.push_back(entry.path());
  }
  std::sort(xmls.begin(), xmls.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  std::vector<VocFile> files;
  files.reserve(xmls.size());
  for (const auto& xml : xmls) files.push_back(read_voc(xml));

  std::vector<std::string> classes;
  if (src.class_list) {
    classes = *src.class_list;
    for (const auto& f : files) {
      for (const auto& o : f.objects) {
        if (std::find(classes.begin(), classes.end(), o.name) == classes.end()) {
          conversion_error(f.where, "class '" + o.name + "' is not in the class list");
        }
      }
    }
  } else {
    for (const auto& f : files) {
      for (const auto& o : f.objects) {
        if (std::find(classes.begin(), classes.end(), o.name) == classes.end()) classes.push_back(o.name);
      }
    }
  }
  // A domain needs at least one class; an empty conversion still has a schema.
  const auto schema = detail::detection_schema(classes.empty() ? std::vector<std::string>{"object"} : classes);

  const auto images = fs::absolute(src.images_dir).lexically_normal();
  const auto prefix = (images.has_filename() ? images.filename() : images.parent_path().filename()).string();
  const auto root = images.has_filename() ? images.parent_path() : images.parent_path().parent_path();

  std::vector<dsdl::Sample> samples;
  for (const auto& f : files) {
    yaml::Sequence objects;
    for (const auto& o : f.objects) {
      yaml::Mapping obj{{"bbox", detail::bbox_node(o.xmin, o.ymin, o.xmax - o.xmin, o.ymax - o.ymin), {}},
                        {"label", yaml::Node(o.name), {}}};
      if (o.difficult) obj.push_back({"difficult", yaml::Node(*o.difficult), {}});
      objects.emplace_back(std::move(obj));
    }
    yaml::Node raw(yaml::Mapping{{"media", yaml::Node(prefix + "/" + f.filename), {}},
                                 {"objects", yaml::Node(std::move(objects)), {}}});
    samples.push_back(detail::checked_sample(raw, schema, f.where));
  }

  Diagnostics warnings;
  if (samples.empty()) {
    warnings.push_back(Diagnostic::warning(ErrorCode::EmptyDataset,
                                           "no annotation files in " + src.annotations_dir.string()));
  }
  return std::make_shared<engine::SampleSet>(schema, std::move(samples), root,
                                             "voc:" + src.annotations_dir.string(), std::move(warnings));
}

}  // namespace odl::convert
