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

#include "odl/engine/export.hpp"

#include <map>
#include <set>

#include "odl/core/files.hpp"

namespace odl::engine {

namespace fs = std::filesystem;
using dsdl::FieldType;
using dsdl::TypeKind;

namespace {

void collect(const dsdl::Schema& schema, const FieldType& type, std::set<std::string>& names);

void collect_record(const dsdl::Schema& schema, const std::string& name, std::set<std::string>& names) {
  if (!names.insert(name).second) return;
  if (const auto* rec = schema.record(name)) {
    for (const auto& f : rec->fields) collect(schema, f.type, names);
  }
}

void collect(const dsdl::Schema& schema, const FieldType& type, std::set<std::string>& names) {
  switch (type.kind()) {
    case TypeKind::Label: names.insert(type.name()); break;
    case TypeKind::List: collect(schema, type.element(), names); break;
    case TypeKind::Ref: collect_record(schema, type.name(), names); break;
    default: break;
  }
}

dsdl::DsdlDocument document_with(const dsdl::Schema& schema, std::vector<yaml::Node> samples) {
  std::set<std::string> reachable;
  collect_record(schema, schema.sample_type, reachable);
  dsdl::DsdlDocument doc;
  for (const auto& def : schema.defs) {
    if (reachable.count(dsdl::definition_name(def)) != 0) doc.defs.push_back(def);
  }
  dsdl::DataSection data;
  data.sample_type = schema.sample_type;
  data.samples = std::move(samples);
  doc.data = std::move(data);
  return doc;
}

bool valid_split(const std::string& split) {
  if (split.empty() || split == "." || split == "..") return false;
  return split.find_first_of(std::string("/\\\0", 3)) == std::string::npos;
}

// Decides where each local media file lands under the output directory.
class MediaPlanner {
 public:
  explicit MediaPlanner(fs::path out) : out_(std::move(out)) {}

  std::string place(const std::string& raw, const fs::path& root) {
    const auto loc = locator::parse_locator(raw);
    if (loc.scheme != locator::Scheme::Relative) return raw;
    const auto part = ordinal(root);
    const auto source = fs::absolute(root / loc.path).lexically_normal();
    std::error_code ec;
    if (!fs::is_regular_file(source, ec)) {
      auto moved = loc;
      moved.scheme = locator::Scheme::File;
      moved.path = source.string();
      return moved.to_string();
    }
    std::string rel = loc.path;
    if (auto it = claimed_.find(rel); it != claimed_.end() && it->second != source) {
      rel = "parts/" + std::to_string(part) + "/" + loc.path;
    }
    claimed_.emplace(rel, source);
    copy(source, out_ / rel);
    if (rel == loc.path) return raw;
    auto moved = loc;
    moved.path = rel;
    return moved.to_string();
  }

 private:
  std::size_t ordinal(const fs::path& root) {
    auto [it, inserted] = roots_.emplace(root, roots_.size());
    (void)inserted;
    return it->second;
  }

  void copy(const fs::path& source, const fs::path& dest) {
    if (!copied_.insert(dest).second) return;
    try {
      fs::create_directories(dest.parent_path());
      if (fs::exists(dest) && fs::equivalent(source, dest)) return;
      fs::copy_file(source, dest, fs::copy_options::overwrite_existing);
    } catch (const fs::filesystem_error& e) {
      throw Error(ErrorCode::WriteError, "cannot copy " + source.string() + " to " + dest.string() +
                                             ": " + e.code().message());
    }
  }

  fs::path out_;
  std::map<std::string, fs::path> claimed_;
  std::map<fs::path, std::size_t> roots_;
  std::set<fs::path> copied_;
};

}  // namespace

dsdl::DsdlDocument to_document(const Dataset& ds) {
  std::vector<yaml::Node> samples;
  samples.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) samples.push_back(dsdl::to_yaml(ds.at(i)));
  return document_with(ds.schema(), std::move(samples));
}

fs::path export_sampleset(const Dataset& ds, const fs::path& out_dir, const std::string& split) {
  if (!valid_split(split)) {
    throw Error(ErrorCode::WriteError, "invalid split name '" + split + "'");
  }
  const auto& schema = ds.schema();
  MediaPlanner planner(fs::absolute(out_dir));

  std::vector<yaml::Node> samples;
  samples.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    dsdl::Sample sample = ds.at(i);
    const auto& root = ds.root_of(i);
    dsdl::walk_record(sample, schema.sample_record(), schema,
                      [&](dsdl::Value& value, const FieldType& type) {
                        if (type.kind() != TypeKind::Image && type.kind() != TypeKind::Text) return;
                        auto& ref = std::get<dsdl::MediaRef>(value.data);
                        ref.locator = planner.place(ref.locator, root);
                      });
    samples.push_back(dsdl::to_yaml(sample));
  }

  const auto path = out_dir / "dsdl" / ("set-" + split) / (split + ".yaml");
  write_file(path, dsdl::serialize_document(document_with(schema, std::move(samples))));
  return path;
}

}  // namespace odl::engine
