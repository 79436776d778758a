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

#include "odl/dsdl/document.hpp"

#include <algorithm>
#include <stdexcept>

namespace odl::dsdl {
namespace {

struct BuiltinName {
  std::string_view name;
  TypeKind kind;
};

constexpr BuiltinName kBuiltins[] = {
    {"Bool", TypeKind::Bool},   {"Int", TypeKind::Int},         {"Num", TypeKind::Num},
    {"Str", TypeKind::Str},     {"Coord", TypeKind::Coord},     {"BBox", TypeKind::BBox},
    {"Polygon", TypeKind::Polygon}, {"Image", TypeKind::Image}, {"Text", TypeKind::Text},
};

constexpr int kMaxExprNesting = 64;

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::optional<FieldType> parse_expr(std::string_view text, int nesting, std::string& error) {
  text = trim(text);
  if (nesting > kMaxExprNesting) {
    error = "type expression nested too deeply";
    return std::nullopt;
  }
  const auto open = text.find('[');
  if (open == std::string_view::npos) {
    if (!is_identifier(text)) {
      error = "'" + std::string(text) + "' is not a valid type name";
      return std::nullopt;
    }
    if (text == "Label" || text == "List") {
      error = std::string(text) + " requires a bracketed argument";
      return std::nullopt;
    }
    for (const auto& b : kBuiltins) {
      if (b.name == text) return FieldType::builtin(b.kind);
    }
    return FieldType::ref(std::string(text));
  }
  if (text.back() != ']') {
    error = "unbalanced brackets in '" + std::string(text) + "'";
    return std::nullopt;
  }
  const auto head = trim(text.substr(0, open));
  const auto arg = text.substr(open + 1, text.size() - open - 2);
  if (head == "Label") {
    const auto domain = trim(arg);
    if (!is_identifier(domain)) {
      error = "Label requires exactly one domain name, got '" + std::string(arg) + "'";
      return std::nullopt;
    }
    return FieldType::label(std::string(domain));
  }
  if (head == "List") {
    auto element = parse_expr(arg, nesting + 1, error);
    if (!element) return std::nullopt;
    return FieldType::list(std::move(*element));
  }
  error = "'" + std::string(head) + "' does not take a bracketed argument";
  return std::nullopt;
}

}  // namespace

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  const auto first = text.front();
  if (!((first >= 'A' && first <= 'Z') || (first >= 'a' && first <= 'z') || first == '_')) {
    return false;
  }
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

FieldType FieldType::builtin(TypeKind kind) {
  if (kind == TypeKind::Label || kind == TypeKind::List || kind == TypeKind::Ref) {
    throw std::invalid_argument("FieldType::builtin: kind needs an argument");
  }
  FieldType t;
  t.kind_ = kind;
  return t;
}

FieldType FieldType::label(std::string domain) {
  FieldType t;
  t.kind_ = TypeKind::Label;
  t.name_ = std::move(domain);
  return t;
}

FieldType FieldType::list(FieldType element) {
  FieldType t;
  t.kind_ = TypeKind::List;
  t.element_ = std::make_shared<const FieldType>(std::move(element));
  return t;
}

FieldType FieldType::ref(std::string record) {
  FieldType t;
  t.kind_ = TypeKind::Ref;
  t.name_ = std::move(record);
  return t;
}

int FieldType::list_depth() const {
  int depth = 0;
  for (const FieldType* t = this; t->kind_ == TypeKind::List; t = t->element_.get()) ++depth;
  return depth;
}

const FieldType& FieldType::innermost() const {
  const FieldType* t = this;
  while (t->kind_ == TypeKind::List) t = t->element_.get();
  return *t;
}

std::string FieldType::to_string() const {
  switch (kind_) {
    case TypeKind::Label:
      return "Label[" + name_ + "]";
    case TypeKind::List:
      return "List[" + element_->to_string() + "]";
    case TypeKind::Ref:
      return name_;
    default:
      for (const auto& b : kBuiltins) {
        if (b.kind == kind_) return std::string(b.name);
      }
      return "?";
  }
}

bool operator==(const FieldType& a, const FieldType& b) {
  if (a.kind_ != b.kind_ || a.name_ != b.name_) return false;
  if (a.kind_ != TypeKind::List) return true;
  return *a.element_ == *b.element_;
}

std::optional<FieldType> parse_type_expr(std::string_view text, std::string* error) {
  std::string message;
  auto result = parse_expr(text, 0, message);
  if (!result && error != nullptr) *error = message;
  return result;
}

const FieldDef* RecordDef::field(std::string_view field_name) const {
  for (const auto& f : fields) {
    if (f.name == field_name) return &f;
  }
  return nullptr;
}

bool RecordDef::is_optional(std::string_view field_name) const {
  return std::find(optional_fields.begin(), optional_fields.end(), field_name) !=
         optional_fields.end();
}

std::optional<std::size_t> ClassDomain::index_of(std::string_view class_name) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == class_name) return i;
  }
  return std::nullopt;
}

const std::string& definition_name(const Definition& def) {
  return std::visit([](const auto& d) -> const std::string& { return d.name; }, def);
}

Mark definition_mark(const Definition& def) {
  return std::visit([](const auto& d) { return d.mark; }, def);
}

const Definition* find_definition(const Definitions& defs, std::string_view name) {
  for (const auto& def : defs) {
    if (definition_name(def) == name) return &def;
  }
  return nullptr;
}

const RecordDef* find_record(const Definitions& defs, std::string_view name) {
  const auto* def = find_definition(defs, name);
  return def != nullptr ? std::get_if<RecordDef>(def) : nullptr;
}

const ClassDomain* find_domain(const Definitions& defs, std::string_view name) {
  const auto* def = find_definition(defs, name);
  return def != nullptr ? std::get_if<ClassDomain>(def) : nullptr;
}

const RecordDef& Schema::sample_record() const {
  const auto* rec = record(sample_type);
  if (rec == nullptr) throw std::logic_error("schema has no record named " + sample_type);
  return *rec;
}

}  // namespace odl::dsdl
