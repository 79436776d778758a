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

#include <string>
#include <utility>

#include "odl/dsdl/dsdl.hpp"

namespace odl::dsdl {
namespace {

constexpr std::string_view kVersionKey = "$dsdl-version";
constexpr std::string_view kImportKey = "$import";
constexpr std::string_view kMetaKey = "meta";
constexpr std::string_view kDefsKey = "defs";
constexpr std::string_view kDataKey = "data";
constexpr std::string_view kDefKindKey = "$def";
constexpr std::string_view kSampleTypeKey = "sample-type";
constexpr std::string_view kSamplesKey = "samples";

class DocumentBuilder {
 public:
  explicit DocumentBuilder(std::string_view path) : path_(path) {}

  DocumentResult build(const yaml::Node& root) {
    DocumentResult result;
    const auto* top = root.as_mapping();
    if (root.is_null()) {
      error(ErrorCode::MissingVersion, "document is empty; '$dsdl-version' is required", root.mark);
      return finish(std::nullopt);
    }
    if (top == nullptr) {
      error(ErrorCode::Syntax, "a DSDL document must be a mapping", root.mark);
      return finish(std::nullopt);
    }

    DsdlDocument doc;
    doc.source.path = path_;
    const yaml::Node* version = root.find(kVersionKey);
    if (version == nullptr) {
      error(ErrorCode::MissingVersion, "missing '$dsdl-version'", root.mark);
    } else {
      read_version(*version, doc);
    }

    for (const auto& entry : *top) {
      if (entry.key == kVersionKey) continue;
      if (entry.key == kImportKey) {
        read_imports(entry.value, doc);
      } else if (entry.key == kMetaKey) {
        if (entry.value.is_mapping()) {
          doc.meta = entry.value;
        } else if (!entry.value.is_null()) {
          error(ErrorCode::Syntax, "'meta' must be a mapping", entry.value.mark);
        }
      } else if (entry.key == kDefsKey) {
        read_defs(entry.value, doc);
      } else if (entry.key == kDataKey) {
        read_data(entry.value, doc);
      } else {
        warning(ErrorCode::UnknownKey, "unknown top-level key '" + entry.key + "' ignored",
                entry.key_mark);
      }
    }
    return finish(std::move(doc));
  }

 private:
  std::string path_;
  Diagnostics diags_;
  bool failed_ = false;

  Location at(Mark m) const { return Location{path_, m.line, m.column}; }
  void error(ErrorCode code, std::string message, Mark m) {
    failed_ = true;
    diags_.push_back(Diagnostic::error(code, std::move(message), at(m)));
  }
  void warning(ErrorCode code, std::string message, Mark m) {
    diags_.push_back(Diagnostic::warning(code, std::move(message), at(m)));
  }

  DocumentResult finish(std::optional<DsdlDocument> doc) {
    DocumentResult result;
    sort_by_location(diags_);
    result.diagnostics = std::move(diags_);
    if (!failed_) result.document = std::move(doc);
    return result;
  }

  void read_version(const yaml::Node& node, DsdlDocument& doc) {
    std::string text;
    if (const auto* s = node.as_string()) {
      text = *s;
    } else if (node.is_number()) {
      text = yaml::scalar_text(node);
    } else {
      error(ErrorCode::UnsupportedVersion, "'$dsdl-version' must be a version string", node.mark);
      return;
    }
    if (text != kSupportedVersion) {
      error(ErrorCode::UnsupportedVersion,
            "unsupported DSDL version '" + text + "' (supported: " + std::string(kSupportedVersion) +
                ")",
            node.mark);
      return;
    }
    doc.version = text;
  }

  void read_imports(const yaml::Node& node, DsdlDocument& doc) {
    if (node.is_null()) return;
    const auto* seq = node.as_sequence();
    if (seq == nullptr) {
      error(ErrorCode::Syntax, "'$import' must be a sequence of template names", node.mark);
      return;
    }
    for (const auto& item : *seq) {
      const auto* name = item.as_string();
      if (name == nullptr || name->empty()) {
        error(ErrorCode::Syntax, "import entries must be non-empty names", item.mark);
        continue;
      }
      doc.imports.push_back(*name);
    }
  }

  void read_defs(const yaml::Node& node, DsdlDocument& doc) {
    if (node.is_null()) return;
    const auto* map = node.as_mapping();
    if (map == nullptr) {
      error(ErrorCode::Syntax, "'defs' must be a mapping of definition names", node.mark);
      return;
    }
    for (const auto& entry : *map) {
      if (!is_identifier(entry.key)) {
        error(ErrorCode::BadDefinition, "'" + entry.key + "' is not a valid definition name",
              entry.key_mark);
        continue;
      }
      const auto* body = entry.value.as_mapping();
      const yaml::Node* kind = entry.value.find(kDefKindKey);
      if (body == nullptr || kind == nullptr || kind->as_string() == nullptr) {
        error(ErrorCode::BadDefinition,
              "definition '" + entry.key + "' needs '$def: record' or '$def: class_domain'",
              entry.key_mark);
        continue;
      }
      if (*kind->as_string() == "record") {
        if (auto rec = read_record(entry)) doc.defs.emplace_back(std::move(*rec));
      } else if (*kind->as_string() == "class_domain") {
        if (auto dom = read_domain(entry)) doc.defs.emplace_back(std::move(*dom));
      } else {
        error(ErrorCode::BadDefinition,
              "unknown definition kind '" + *kind->as_string() + "' for '" + entry.key + "'",
              kind->mark);
      }
    }
  }

  std::optional<RecordDef> read_record(const yaml::Entry& entry) {
    RecordDef rec;
    rec.name = entry.key;
    rec.mark = entry.key_mark;
    bool ok = true;
    for (const auto& item : *entry.value.as_mapping()) {
      if (item.key == kDefKindKey) continue;
      if (item.key == "fields") {
        const auto* fields = item.value.as_mapping();
        if (fields == nullptr) {
          error(ErrorCode::BadDefinition, "'fields' of '" + rec.name + "' must be a mapping",
                item.value.mark);
          ok = false;
          continue;
        }
        for (const auto& f : *fields) {
          if (!is_identifier(f.key)) {
            error(ErrorCode::BadDefinition, "'" + f.key + "' is not a valid field name", f.key_mark);
            ok = false;
            continue;
          }
          const auto* expr = f.value.as_string();
          std::string why;
          auto type = expr != nullptr ? parse_type_expr(*expr, &why) : std::nullopt;
          if (!type) {
            if (expr == nullptr) why = "type expression must be a string";
            error(ErrorCode::BadTypeExpr, rec.name + "." + f.key + ": " + why, f.value.mark);
            ok = false;
            continue;
          }
          rec.fields.push_back(FieldDef{f.key, std::move(*type), f.key_mark});
        }
      } else if (item.key == "optional") {
        const auto* names = item.value.as_sequence();
        if (names == nullptr) {
          error(ErrorCode::BadDefinition, "'optional' of '" + rec.name + "' must be a sequence",
                item.value.mark);
          ok = false;
          continue;
        }
        for (const auto& n : *names) {
          if (const auto* s = n.as_string()) {
            rec.optional_fields.push_back(*s);
          } else {
            error(ErrorCode::BadDefinition, "optional field names must be strings", n.mark);
            ok = false;
          }
        }
      } else {
        warning(ErrorCode::UnknownKey, "unknown key '" + item.key + "' in record '" + rec.name + "'",
                item.key_mark);
      }
    }
    if (entry.value.find("fields") == nullptr) {
      error(ErrorCode::BadDefinition, "record '" + rec.name + "' has no 'fields'", entry.key_mark);
      ok = false;
    }
    if (!ok) return std::nullopt;
    return rec;
  }

  std::optional<ClassDomain> read_domain(const yaml::Entry& entry) {
    ClassDomain dom;
    dom.name = entry.key;
    dom.mark = entry.key_mark;
    bool ok = true;
    for (const auto& item : *entry.value.as_mapping()) {
      if (item.key == kDefKindKey) continue;
      if (item.key == "classes") {
        const auto* seq = item.value.as_sequence();
        if (seq == nullptr) {
          error(ErrorCode::BadDefinition, "'classes' of '" + dom.name + "' must be a sequence",
                item.value.mark);
          ok = false;
          continue;
        }
        for (const auto& c : *seq) {
          if (const auto* s = c.as_string()) {
            dom.classes.push_back(*s);
          } else {
            error(ErrorCode::BadDefinition,
                  "class names must be strings (got " + std::string(c.kind_name()) + ")", c.mark);
            ok = false;
          }
        }
      } else {
        warning(ErrorCode::UnknownKey,
                "unknown key '" + item.key + "' in class domain '" + dom.name + "'", item.key_mark);
      }
    }
    if (entry.value.find("classes") == nullptr) {
      error(ErrorCode::BadDefinition, "class domain '" + dom.name + "' has no 'classes'",
            entry.key_mark);
      ok = false;
    }
    if (!ok) return std::nullopt;
    return dom;
  }

  void read_data(const yaml::Node& node, DsdlDocument& doc) {
    const auto* map = node.as_mapping();
    if (map == nullptr) {
      error(ErrorCode::Syntax, "'data' must be a mapping", node.mark);
      return;
    }
    DataSection data;
    data.mark = node.mark;
    data.samples = std::vector<yaml::Node>{};
    bool ok = true;
    const auto* type = node.find(kSampleTypeKey);
    if (type == nullptr || type->as_string() == nullptr) {
      error(ErrorCode::MissingSampleType, "'data' needs a 'sample-type' naming a record",
            type != nullptr ? type->mark : node.mark);
      ok = false;
    } else if (!is_identifier(*type->as_string())) {
      error(ErrorCode::BadTypeExpr, "'sample-type' must name a record, got '" +
                                        *type->as_string() + "'",
            type->mark);
      ok = false;
    } else {
      data.sample_type = *type->as_string();
    }
    for (const auto& entry : *map) {
      if (entry.key == kSampleTypeKey) continue;
      if (entry.key == kSamplesKey) {
        if (const auto* seq = entry.value.as_sequence()) {
          data.samples = *seq;
        } else if (const auto* loc = entry.value.as_string()) {
          data.samples = *loc;
        } else if (!entry.value.is_null()) {
          error(ErrorCode::Syntax, "'samples' must be a sequence or a locator string",
                entry.value.mark);
          ok = false;
        }
      } else {
        warning(ErrorCode::UnknownKey, "unknown key '" + entry.key + "' in 'data'", entry.key_mark);
      }
    }
    if (ok) doc.data = std::move(data);
  }
};

yaml::Node strings_node(const std::vector<std::string>& items) {
  yaml::Sequence seq;
  seq.reserve(items.size());
  for (const auto& s : items) seq.emplace_back(s);
  return yaml::Node{std::move(seq)};
}

yaml::Node definition_node(const Definition& def) {
  yaml::Mapping body;
  if (const auto* rec = std::get_if<RecordDef>(&def)) {
    body.push_back({"$def", yaml::Node{"record"}, {}});
    yaml::Mapping fields;
    for (const auto& f : rec->fields) fields.push_back({f.name, yaml::Node{f.type.to_string()}, {}});
    body.push_back({"fields", yaml::Node{std::move(fields)}, {}});
    if (!rec->optional_fields.empty()) {
      body.push_back({"optional", strings_node(rec->optional_fields), {}});
    }
  } else {
    const auto& dom = std::get<ClassDomain>(def);
    body.push_back({"$def", yaml::Node{"class_domain"}, {}});
    body.push_back({"classes", strings_node(dom.classes), {}});
  }
  return yaml::Node{std::move(body)};
}

}  // namespace

DocumentResult parse_document(std::string_view text, std::string_view path) {
  auto parsed = yaml::parse(text, path);
  if (!parsed.root) return DocumentResult{std::nullopt, std::move(parsed.diagnostics)};
  return DocumentBuilder(path).build(*parsed.root);
}

yaml::Node to_yaml(const DsdlDocument& doc) {
  yaml::Mapping top;
  top.push_back({std::string(kVersionKey), yaml::Node{doc.version}, {}});
  if (!doc.imports.empty()) top.push_back({std::string(kImportKey), strings_node(doc.imports), {}});
  if (doc.meta) top.push_back({std::string(kMetaKey), *doc.meta, {}});
  if (!doc.defs.empty()) {
    yaml::Mapping defs;
    for (const auto& def : doc.defs) defs.push_back({definition_name(def), definition_node(def), {}});
    top.push_back({std::string(kDefsKey), yaml::Node{std::move(defs)}, {}});
  }
  if (doc.data) {
    yaml::Mapping data;
    data.push_back({std::string(kSampleTypeKey), yaml::Node{doc.data->sample_type}, {}});
    if (const auto* inline_samples = std::get_if<std::vector<yaml::Node>>(&doc.data->samples)) {
      data.push_back({std::string(kSamplesKey), yaml::Node{yaml::Sequence(*inline_samples)}, {}});
    } else {
      data.push_back(
          {std::string(kSamplesKey), yaml::Node{std::get<std::string>(doc.data->samples)}, {}});
    }
    top.push_back({std::string(kDataKey), yaml::Node{std::move(data)}, {}});
  }
  return yaml::Node{std::move(top)};
}

std::string serialize_document(const DsdlDocument& doc) { return yaml::emit(to_yaml(doc)); }

std::optional<Schema> schema_of(const DsdlDocument& doc) {
  if (!doc.data || find_record(doc.defs, doc.data->sample_type) == nullptr) return std::nullopt;
  return Schema{doc.defs, doc.data->sample_type};
}

}  // namespace odl::dsdl
