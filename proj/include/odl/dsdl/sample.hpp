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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odl/dsdl/document.hpp"

namespace odl::dsdl {

struct Coord {
  double x = 0;
  double y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

// Canonical box: top-left corner plus non-negative extent.
struct BBox {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;
  friend bool operator==(const BBox&, const BBox&) = default;
};

struct Polygon {
  std::vector<Coord> points;
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

// A class label stored by name; `index` is its position in the domain the
// owning dataset currently exposes.
struct LabelValue {
  std::string name;
  std::size_t index = 0;
  friend bool operator==(const LabelValue&, const LabelValue&) = default;
};

// Image or Text payload reference, kept as the original locator string.
struct MediaRef {
  std::string locator;
  friend bool operator==(const MediaRef&, const MediaRef&) = default;
};

struct Value;
struct Field;
using List = std::vector<Value>;
using Record = std::vector<Field>;

struct Value {
  std::variant<bool, std::int64_t, double, std::string, Coord, BBox, Polygon, LabelValue, MediaRef,
               List, Record>
      data;

  friend bool operator==(const Value& a, const Value& b);
};

struct Field {
  std::string name;
  Value value;
  friend bool operator==(const Field&, const Field&) = default;
};

// A type-checked data instance. Fields follow the schema's declaration
// order; absent optional fields are omitted.
using Sample = Record;

const Value* find_field(const Record& record, std::string_view name);
Value* find_field(Record& record, std::string_view name);

// Raw representation as it appears in sample files (labels by name).
yaml::Node to_yaml(const Value& value);
yaml::Node to_yaml(const Record& record);

// Visits every value in `sample` together with its declared type, depth
// first in field order.
template <typename Fn>
void walk_typed(Value& value, const FieldType& type, const Schema& schema, Fn&& fn);
template <typename Fn>
void walk_typed(const Value& value, const FieldType& type, const Schema& schema, Fn&& fn);

template <typename RecordT, typename Fn>
void walk_record(RecordT& record, const RecordDef& def, const Schema& schema, Fn&& fn) {
  for (auto& field : record) {
    if (const auto* field_def = def.field(field.name)) {
      walk_typed(field.value, field_def->type, schema, fn);
    }
  }
}

template <typename ValueT, typename Fn>
void walk_typed_impl(ValueT& value, const FieldType& type, const Schema& schema, Fn& fn) {
  fn(value, type);
  if (type.kind() == TypeKind::List) {
    if (auto* items = std::get_if<List>(&value.data)) {
      for (auto& item : *items) walk_typed_impl(item, type.element(), schema, fn);
    }
  } else if (type.kind() == TypeKind::Ref) {
    const auto* def = schema.record(type.name());
    auto* record = std::get_if<Record>(&value.data);
    if (def != nullptr && record != nullptr) {
      for (auto& field : *record) {
        if (const auto* field_def = def->field(field.name)) {
          walk_typed_impl(field.value, field_def->type, schema, fn);
        }
      }
    }
  }
}

template <typename Fn>
void walk_typed(Value& value, const FieldType& type, const Schema& schema, Fn&& fn) {
  walk_typed_impl(value, type, schema, fn);
}

template <typename Fn>
void walk_typed(const Value& value, const FieldType& type, const Schema& schema, Fn&& fn) {
  walk_typed_impl(value, type, schema, fn);
}

struct TypecheckResult {
  std::optional<Sample> sample;
  Diagnostics diagnostics;
};

// Checks a raw sample map against `schema` and coerces it to canonical
// form. `context` prefixes diagnostic messages (e.g. "samples[3]").
TypecheckResult typecheck_sample(const yaml::Node& raw, const RecordDef& schema,
                                 const Definitions& defs, std::string_view context = "sample",
                                 std::string_view source_path = {});

}  // namespace odl::dsdl
