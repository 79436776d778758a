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

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odl/dsdl/yaml.hpp"

namespace odl::dsdl {

using yaml::Mark;

inline constexpr std::string_view kSupportedVersion = "1.0";
inline constexpr int kMaxListDepth = 4;

enum class TypeKind { Bool, Int, Num, Str, Coord, BBox, Polygon, Label, Image, Text, List, Ref };

// A field type expression: a built-in kind, Label[Domain], List[T], or a
// reference to a record definition by name.
class FieldType {
 public:
  FieldType() = default;
  static FieldType builtin(TypeKind kind);
  static FieldType label(std::string domain);
  static FieldType list(FieldType element);
  static FieldType ref(std::string record);

  TypeKind kind() const { return kind_; }
  // Domain name for Label, record name for Ref, empty otherwise.
  const std::string& name() const { return name_; }
  // Only valid for List.
  const FieldType& element() const { return *element_; }

  // Number of directly nested List layers (List[List[Int]] has depth 2).
  int list_depth() const;
  // The innermost non-List type.
  const FieldType& innermost() const;
  std::string to_string() const;

  friend bool operator==(const FieldType& a, const FieldType& b);

 private:
  TypeKind kind_ = TypeKind::Str;
  std::string name_;
  std::shared_ptr<const FieldType> element_;
};

// Parses "Int", "Label[Colors]", "List[List[BBox]]", "BBoxAnn", ...
// Returns nullopt and fills `error` on malformed input.
std::optional<FieldType> parse_type_expr(std::string_view text, std::string* error = nullptr);
bool is_identifier(std::string_view text);

struct FieldDef {
  std::string name;
  FieldType type;
  Mark mark;

  friend bool operator==(const FieldDef&, const FieldDef&) = default;
};

struct RecordDef {
  std::string name;
  std::vector<FieldDef> fields;
  std::vector<std::string> optional_fields;
  Mark mark;

  const FieldDef* field(std::string_view field_name) const;
  bool is_optional(std::string_view field_name) const;

  friend bool operator==(const RecordDef&, const RecordDef&) = default;
};

struct ClassDomain {
  std::string name;
  std::vector<std::string> classes;
  Mark mark;

  std::optional<std::size_t> index_of(std::string_view class_name) const;

  friend bool operator==(const ClassDomain&, const ClassDomain&) = default;
};

using Definition = std::variant<RecordDef, ClassDomain>;
using Definitions = std::vector<Definition>;

const std::string& definition_name(const Definition& def);
Mark definition_mark(const Definition& def);
const Definition* find_definition(const Definitions& defs, std::string_view name);
const RecordDef* find_record(const Definitions& defs, std::string_view name);
const ClassDomain* find_domain(const Definitions& defs, std::string_view name);

struct DataSection {
  // Name of the RecordDef every sample conforms to.
  std::string sample_type;
  // Inline raw sample maps, or an object locator naming a samples file.
  std::variant<std::vector<yaml::Node>, std::string> samples;
  Mark mark;

  bool is_inline() const { return samples.index() == 0; }

  friend bool operator==(const DataSection&, const DataSection&) = default;
};

// Where a document came from. Ignored by equality.
struct SourceName {
  std::string path;
  friend bool operator==(const SourceName&, const SourceName&) { return true; }
};

struct DsdlDocument {
  std::string version{kSupportedVersion};
  std::vector<std::string> imports;
  std::optional<yaml::Node> meta;
  Definitions defs;
  std::optional<DataSection> data;
  SourceName source;

  friend bool operator==(const DsdlDocument&, const DsdlDocument&) = default;
};

// Resolved type environment for a sample type: all definitions plus the
// name of the record samples conform to.
struct Schema {
  Definitions defs;
  std::string sample_type;

  const RecordDef& sample_record() const;
  const RecordDef* record(std::string_view name) const { return find_record(defs, name); }
  const ClassDomain* domain(std::string_view name) const { return find_domain(defs, name); }

  friend bool operator==(const Schema&, const Schema&) = default;
};

}  // namespace odl::dsdl
