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
#include <set>
#include <string>

#include "odl/dsdl/dsdl.hpp"

namespace odl::dsdl {
namespace {

class Validator {
 public:
  explicit Validator(const DsdlDocument& doc) : doc_(doc) {}

  Diagnostics run() {
    if (doc_.version != kSupportedVersion) {
      error(ErrorCode::UnsupportedVersion, "unsupported DSDL version '" + doc_.version + "'", {});
    }
    for (const auto& name : doc_.imports) {
      error(ErrorCode::UnresolvedImport, "import '" + name + "' has not been resolved", {});
    }
    check_unique_names();
    for (const auto& def : doc_.defs) {
      if (const auto* dom = std::get_if<ClassDomain>(&def)) {
        check_domain(*dom);
      } else {
        check_record(std::get<RecordDef>(def));
      }
    }
    check_recursion();
    check_data();
    sort_by_location(diags_);
    return std::move(diags_);
  }

 private:
  const DsdlDocument& doc_;
  Diagnostics diags_;

  Location at(Mark m) const { return Location{doc_.source.path, m.line, m.column}; }
  void error(ErrorCode code, std::string message, Mark m) {
    diags_.push_back(Diagnostic::error(code, std::move(message), at(m)));
  }

  void check_unique_names() {
    std::set<std::string> seen;
    for (const auto& def : doc_.defs) {
      if (!seen.insert(definition_name(def)).second) {
        error(ErrorCode::DuplicateDefinition,
              "definition '" + definition_name(def) + "' is defined more than once",
              definition_mark(def));
      }
    }
  }

  void check_domain(const ClassDomain& dom) {
    if (dom.classes.empty()) {
      error(ErrorCode::EmptyDomain, "class domain '" + dom.name + "' has no classes", dom.mark);
    }
    std::set<std::string> seen;
    std::set<std::string> reported;
    for (const auto& c : dom.classes) {
      if (c.empty()) {
        error(ErrorCode::EmptyClassName, "class domain '" + dom.name + "' contains an empty name",
              dom.mark);
        continue;
      }
      if (!seen.insert(c).second && reported.insert(c).second) {
        error(ErrorCode::DuplicateClass,
              "class '" + c + "' appears more than once in domain '" + dom.name + "'", dom.mark);
      }
    }
  }

  void check_record(const RecordDef& rec) {
    std::set<std::string> names;
    for (const auto& f : rec.fields) {
      if (!names.insert(f.name).second) {
        error(ErrorCode::DuplicateField, "record '" + rec.name + "' declares field '" + f.name +
                                             "' more than once",
              f.mark);
      }
      check_type(rec, f);
    }
    for (const auto& opt : rec.optional_fields) {
      if (names.count(opt) == 0) {
        error(ErrorCode::UnknownOptionalField,
              "optional field '" + opt + "' is not a field of record '" + rec.name + "'", rec.mark);
      }
    }
  }

  void check_type(const RecordDef& rec, const FieldDef& f) {
    const std::string where = rec.name + "." + f.name;
    if (f.type.list_depth() > kMaxListDepth) {
      error(ErrorCode::ListTooDeep,
            where + ": List nesting depth " + std::to_string(f.type.list_depth()) +
                " exceeds the limit of " + std::to_string(kMaxListDepth),
            f.mark);
    }
    const auto& inner = f.type.innermost();
    if (inner.kind() == TypeKind::Label) {
      if (find_domain(doc_.defs, inner.name()) == nullptr) {
        const bool is_record = find_record(doc_.defs, inner.name()) != nullptr;
        error(ErrorCode::UnknownDomain,
              where + ": '" + inner.name() +
                  (is_record ? "' is a record, not a class domain" : "' is not a defined class domain"),
              f.mark);
      }
    } else if (inner.kind() == TypeKind::Ref) {
      if (find_record(doc_.defs, inner.name()) == nullptr) {
        if (find_domain(doc_.defs, inner.name()) != nullptr) {
          error(ErrorCode::NotARecord,
                where + ": '" + inner.name() + "' is a class domain; use Label[" + inner.name() + "]",
                f.mark);
        } else {
          error(ErrorCode::UnknownType, where + ": unknown type '" + inner.name() + "'", f.mark);
        }
      }
    }
  }

  // A record is recursive when it can reach itself through field types.
  void check_recursion() {
    std::map<std::string, std::set<std::string>> edges;
    for (const auto& def : doc_.defs) {
      if (const auto* rec = std::get_if<RecordDef>(&def)) {
        auto& out = edges[rec->name];
        for (const auto& f : rec->fields) {
          const auto& inner = f.type.innermost();
          if (inner.kind() == TypeKind::Ref) out.insert(inner.name());
        }
      }
    }
    for (const auto& def : doc_.defs) {
      const auto* rec = std::get_if<RecordDef>(&def);
      if (rec == nullptr) continue;
      std::set<std::string> visited;
      std::vector<std::string> stack(edges[rec->name].begin(), edges[rec->name].end());
      bool cyclic = false;
      while (!stack.empty() && !cyclic) {
        auto next = stack.back();
        stack.pop_back();
        if (next == rec->name) {
          cyclic = true;
          break;
        }
        if (!visited.insert(next).second) continue;
        if (auto it = edges.find(next); it != edges.end()) {
          stack.insert(stack.end(), it->second.begin(), it->second.end());
        }
      }
      if (cyclic) {
        error(ErrorCode::RecursiveType, "record '" + rec->name + "' contains itself", rec->mark);
      }
    }
  }

  void check_data() {
    if (!doc_.data) return;
    const auto& data = *doc_.data;
    const auto* rec = find_record(doc_.defs, data.sample_type);
    if (rec == nullptr) {
      if (find_domain(doc_.defs, data.sample_type) != nullptr) {
        error(ErrorCode::NotARecord, "sample-type '" + data.sample_type + "' is not a record",
              data.mark);
      } else {
        error(ErrorCode::UnknownType, "sample-type '" + data.sample_type + "' is not defined",
              data.mark);
      }
      return;
    }
    // Samples are only meaningful against a sound schema.
    if (has_errors(diags_)) return;
    if (const auto* samples = std::get_if<std::vector<yaml::Node>>(&data.samples)) {
      for (std::size_t i = 0; i < samples->size(); ++i) {
        auto checked = typecheck_sample((*samples)[i], *rec, doc_.defs,
                                        "samples[" + std::to_string(i) + "]", doc_.source.path);
        diags_.insert(diags_.end(), checked.diagnostics.begin(), checked.diagnostics.end());
      }
    }
  }
};

}  // namespace

Diagnostics validate(const DsdlDocument& doc) { return Validator(doc).run(); }

}  // namespace odl::dsdl
