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

#include "odl/dsdl/sample.hpp"

#include <cmath>

#include "odl/locator/locator.hpp"

namespace odl::dsdl {

bool operator==(const Value& a, const Value& b) { return a.data == b.data; }

const Value* find_field(const Record& record, std::string_view name) {
  for (const auto& field : record) {
    if (field.name == name) return &field.value;
  }
  return nullptr;
}

Value* find_field(Record& record, std::string_view name) {
  for (auto& field : record) {
    if (field.name == name) return &field.value;
  }
  return nullptr;
}

namespace {

yaml::Node coord_node(const Coord& c) {
  return yaml::Node(yaml::Sequence{yaml::make_number(c.x), yaml::make_number(c.y)});
}

}  // namespace

yaml::Node to_yaml(const Value& value) {
  return std::visit(
      [](const auto& v) -> yaml::Node {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::int64_t> ||
                      std::is_same_v<T, double> || std::is_same_v<T, std::string>) {
          return yaml::Node(v);
        } else if constexpr (std::is_same_v<T, Coord>) {
          return coord_node(v);
        } else if constexpr (std::is_same_v<T, BBox>) {
          return yaml::Node(yaml::Sequence{yaml::make_number(v.x), yaml::make_number(v.y),
                                           yaml::make_number(v.w), yaml::make_number(v.h)});
        } else if constexpr (std::is_same_v<T, Polygon>) {
          yaml::Sequence seq;
          for (const auto& p : v.points) seq.push_back(coord_node(p));
          return yaml::Node(std::move(seq));
        } else if constexpr (std::is_same_v<T, LabelValue>) {
          return yaml::Node(v.name);
        } else if constexpr (std::is_same_v<T, MediaRef>) {
          return yaml::Node(v.locator);
        } else if constexpr (std::is_same_v<T, List>) {
          yaml::Sequence seq;
          for (const auto& item : v) seq.push_back(to_yaml(item));
          return yaml::Node(std::move(seq));
        } else {
          return to_yaml(static_cast<const Record&>(v));
        }
      },
      value.data);
}

yaml::Node to_yaml(const Record& record) {
  yaml::Mapping map;
  for (const auto& field : record) map.push_back(yaml::Entry{field.name, to_yaml(field.value), {}});
  return yaml::Node(std::move(map));
}

namespace {

class Checker {
 public:
  Checker(const Definitions& defs, std::string_view source_path)
      : defs_(defs), path_(source_path) {}

  std::optional<Record> record(const yaml::Node& raw, const RecordDef& def,
                               const std::string& context, int depth) {
    const auto* map = raw.as_mapping();
    if (map == nullptr) {
      error(ErrorCode::TypeMismatch,
            context + ": expected a " + def.name + " mapping, got " + std::string(raw.kind_name()),
            raw.mark);
      return std::nullopt;
    }
    bool ok = true;
    for (const auto& entry : *map) {
      if (def.field(entry.key) == nullptr) {
        error(ErrorCode::UnexpectedField,
              context + ": field '" + entry.key + "' is not declared by " + def.name,
              entry.key_mark);
        ok = false;
      }
    }
    Record out;
    for (const auto& field : def.fields) {
      const auto* node = raw.find(field.name);
      if (node == nullptr || node->is_null()) {
        if (!def.is_optional(field.name)) {
          error(ErrorCode::MissingField,
                context + ": required field '" + field.name + "' is missing", raw.mark);
          ok = false;
        }
        continue;
      }
      auto value = check(*node, field.type, context + "." + field.name, depth);
      if (!value) {
        ok = false;
        continue;
      }
      out.push_back(Field{field.name, std::move(*value)});
    }
    if (!ok) return std::nullopt;
    return out;
  }

  Diagnostics take() { return std::move(diags_); }

 private:
  static constexpr int kMaxDepth = 64;

  std::optional<Value> check(const yaml::Node& node, const FieldType& type,
                             const std::string& where, int depth) {
    if (depth > kMaxDepth) {
      error(ErrorCode::TypeMismatch, where + ": value nests too deeply", node.mark);
      return std::nullopt;
    }
    switch (type.kind()) {
      case TypeKind::Bool:
        if (const auto* b = std::get_if<bool>(&node.value)) return Value{*b};
        return mismatch(node, type, where);
      case TypeKind::Int:
        if (const auto* i = std::get_if<std::int64_t>(&node.value)) return Value{*i};
        return mismatch(node, type, where);
      case TypeKind::Num:
        if (auto n = node.as_number()) return Value{*n};
        return mismatch(node, type, where);
      case TypeKind::Str:
        if (const auto* s = node.as_string()) return Value{*s};
        return mismatch(node, type, where);
      case TypeKind::Coord: {
        auto nums = numbers(node, 2);
        if (!nums) return mismatch(node, type, where);
        return Value{Coord{(*nums)[0], (*nums)[1]}};
      }
      case TypeKind::BBox: {
        auto nums = numbers(node, 4);
        if (!nums) return mismatch(node, type, where);
        const auto& v = *nums;
        if (v[2] < 0 || v[3] < 0) {
          error(ErrorCode::TypeMismatch, where + ": BBox width and height must be non-negative",
                node.mark);
          return std::nullopt;
        }
        return Value{BBox{v[0], v[1], v[2], v[3]}};
      }
      case TypeKind::Polygon: {
        const auto* seq = node.as_sequence();
        if (seq == nullptr || seq->size() < 3) {
          error(ErrorCode::TypeMismatch,
                where + ": expected a Polygon (a sequence of at least 3 [x, y] points)", node.mark);
          return std::nullopt;
        }
        Polygon poly;
        for (const auto& point : *seq) {
          auto nums = numbers(point, 2);
          if (!nums) {
            error(ErrorCode::TypeMismatch, where + ": polygon vertex must be [x, y]", point.mark);
            return std::nullopt;
          }
          poly.points.push_back(Coord{(*nums)[0], (*nums)[1]});
        }
        return Value{std::move(poly)};
      }
      case TypeKind::Label: {
        const auto* name = node.as_string();
        if (name == nullptr) return mismatch(node, type, where);
        const auto* domain = find_domain(defs_, type.name());
        if (domain == nullptr) {
          error(ErrorCode::UnknownDomain, where + ": class domain '" + type.name() + "' is not defined",
                node.mark);
          return std::nullopt;
        }
        auto index = domain->index_of(*name);
        if (!index) {
          error(ErrorCode::UnknownLabel,
                where + ": '" + *name + "' is not a class of " + type.name(), node.mark);
          return std::nullopt;
        }
        return Value{LabelValue{*name, *index}};
      }
      case TypeKind::Image:
      case TypeKind::Text: {
        const auto* text = node.as_string();
        if (text == nullptr) return mismatch(node, type, where);
        try {
          locator::parse_locator(*text);
        } catch (const Error& e) {
          error(e.code(), where + ": " + e.what(), node.mark);
          return std::nullopt;
        }
        return Value{MediaRef{*text}};
      }
      case TypeKind::List: {
        const auto* seq = node.as_sequence();
        if (seq == nullptr) return mismatch(node, type, where);
        List items;
        bool ok = true;
        for (std::size_t i = 0; i < seq->size(); ++i) {
          auto item = check((*seq)[i], type.element(), where + "[" + std::to_string(i) + "]",
                            depth + 1);
          if (item) {
            items.push_back(std::move(*item));
          } else {
            ok = false;
          }
        }
        if (!ok) return std::nullopt;
        return Value{std::move(items)};
      }
      case TypeKind::Ref: {
        const auto* def = find_record(defs_, type.name());
        if (def == nullptr) {
          error(ErrorCode::UnknownType, where + ": record '" + type.name() + "' is not defined",
                node.mark);
          return std::nullopt;
        }
        auto rec = record(node, *def, where, depth + 1);
        if (!rec) return std::nullopt;
        return Value{std::move(*rec)};
      }
    }
    return std::nullopt;
  }

  static std::optional<std::vector<double>> numbers(const yaml::Node& node, std::size_t count) {
    const auto* seq = node.as_sequence();
    if (seq == nullptr || seq->size() != count) return std::nullopt;
    std::vector<double> out;
    for (const auto& item : *seq) {
      auto n = item.as_number();
      if (!n || !std::isfinite(*n)) return std::nullopt;
      out.push_back(*n);
    }
    return out;
  }

  std::nullopt_t mismatch(const yaml::Node& node, const FieldType& type, const std::string& where) {
    error(ErrorCode::TypeMismatch,
          where + ": expected " + type.to_string() + ", got " + std::string(node.kind_name()),
          node.mark);
    return std::nullopt;
  }

  void error(ErrorCode code, std::string message, Mark mark) {
    diags_.push_back(
        Diagnostic::error(code, std::move(message), Location{std::string(path_), mark.line, mark.column}));
  }

  const Definitions& defs_;
  std::string_view path_;
  Diagnostics diags_;
};

}  // namespace

TypecheckResult typecheck_sample(const yaml::Node& raw, const RecordDef& schema,
                                 const Definitions& defs, std::string_view context,
                                 std::string_view source_path) {
  Checker checker(defs, source_path);
  auto sample = checker.record(raw, schema, std::string(context), 0);
  return TypecheckResult{std::move(sample), checker.take()};
}

}  // namespace odl::dsdl
