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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odl/core/error.hpp"

// Restricted YAML: block maps and sequences, flow collections, plain and
// quoted scalars, comments. No anchors, aliases, tags, block scalars,
// multi-line plain scalars or multiple documents.
namespace odl::yaml {

// Source position. Never participates in equality, so trees parsed from
// differently formatted text compare equal when their content does.
struct Mark {
  int line = 0;
  int column = 0;
  friend bool operator==(const Mark&, const Mark&) { return true; }
};

struct Node;
struct Entry;
using Sequence = std::vector<Node>;
using Mapping = std::vector<Entry>;
using Null = std::monostate;

struct Node {
  std::variant<Null, bool, std::int64_t, double, std::string, Sequence, Mapping> value;
  Mark mark;

  Node() = default;
  Node(bool b) : value(b) {}
  Node(std::int64_t i) : value(i) {}
  Node(int i) : value(static_cast<std::int64_t>(i)) {}
  Node(double d) : value(d) {}
  Node(std::string s) : value(std::move(s)) {}
  Node(const char* s) : value(std::string(s)) {}
  Node(Sequence seq) : value(std::move(seq)) {}
  Node(Mapping map) : value(std::move(map)) {}

  bool is_null() const { return std::holds_alternative<Null>(value); }
  bool is_scalar() const { return !is_sequence() && !is_mapping(); }
  bool is_sequence() const { return std::holds_alternative<Sequence>(value); }
  bool is_mapping() const { return std::holds_alternative<Mapping>(value); }
  bool is_number() const {
    return std::holds_alternative<std::int64_t>(value) || std::holds_alternative<double>(value);
  }

  const std::string* as_string() const { return std::get_if<std::string>(&value); }
  const Sequence* as_sequence() const { return std::get_if<Sequence>(&value); }
  const Mapping* as_mapping() const { return std::get_if<Mapping>(&value); }
  std::optional<double> as_number() const;

  // Mapping lookup; nullptr when absent or when this is not a mapping.
  const Node* find(std::string_view key) const;

  // Short human description of the node kind ("string", "sequence", ...).
  std::string_view kind_name() const;

  friend bool operator==(const Node&, const Node&);
};

struct Entry {
  std::string key;
  Node value;
  Mark key_mark;

  friend bool operator==(const Entry&, const Entry&) = default;
};

Node make_number(double value);

struct ParseResult {
  std::optional<Node> root;
  Diagnostics diagnostics;
};

// A document with no content yields a null root.
ParseResult parse(std::string_view text, std::string_view path = {});

// Canonical block-style text: 2-space indentation, LF endings, sequences
// of scalars in flow style, keys in stored order.
std::string emit(const Node& root);

// Core-schema resolution of an unquoted scalar.
Node resolve_plain(std::string_view text);
// Shortest round-trip text that still resolves as a float.
std::string format_float(double value);
// Scalar text as it would be emitted in block context.
std::string scalar_text(const Node& scalar);

}  // namespace odl::yaml
