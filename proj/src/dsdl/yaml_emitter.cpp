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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "odl/dsdl/yaml.hpp"

namespace odl::yaml {
namespace {

constexpr std::string_view kLeadingIndicators = "-?:,[]{}#&*!|>'\"%@`";

bool is_plain_safe(std::string_view text, bool in_flow) {
  if (text.empty()) return false;
  if (kLeadingIndicators.find(text.front()) != std::string_view::npos) return false;
  if (text.front() == ' ' || text.back() == ' ') return false;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u == 0x7f) return false;
    if (in_flow && (c == ',' || c == '[' || c == ']' || c == '{' || c == '}' || c == ':')) {
      return false;
    }
  }
  if (text.find(": ") != std::string_view::npos || text.find(" #") != std::string_view::npos ||
      text.back() == ':') {
    return false;
  }
  return resolve_plain(text).as_string() != nullptr;
}

std::string double_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x20 || u == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02x", u);
          out += buf;
        } else {
          out.push_back(c);
        }
      }
    }
  }
  out.push_back('"');
  return out;
}

std::string string_text(std::string_view text, bool in_flow) {
  return is_plain_safe(text, in_flow) ? std::string(text) : double_quote(text);
}

std::string scalar_in(const Node& node, bool in_flow) {
  struct Visitor {
    bool in_flow;
    std::string operator()(Null) const { return "null"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_float(d); }
    std::string operator()(const std::string& s) const { return string_text(s, in_flow); }
    std::string operator()(const Sequence&) const { return "[]"; }
    std::string operator()(const Mapping&) const { return "{}"; }
  };
  return std::visit(Visitor{in_flow}, node.value);
}

bool is_flowable(const Node& node) {
  const auto* seq = node.as_sequence();
  if (seq == nullptr || seq->empty()) return false;
  for (const auto& item : *seq) {
    if (item.is_mapping()) return false;
    if (item.is_sequence() && !item.as_sequence()->empty() && !is_flowable(item)) return false;
  }
  return true;
}

bool is_inline(const Node& node) {
  if (node.is_scalar()) return true;
  if (const auto* seq = node.as_sequence()) return seq->empty() || is_flowable(node);
  return node.as_mapping()->empty();
}

std::string flow_text(const Node& node) {
  const auto* seq = node.as_sequence();
  if (seq == nullptr) return scalar_in(node, true);
  std::string out = "[";
  for (std::size_t i = 0; i < seq->size(); ++i) {
    if (i > 0) out += ", ";
    out += flow_text((*seq)[i]);
  }
  out += "]";
  return out;
}

std::string inline_text(const Node& node) {
  if (node.is_scalar()) return scalar_in(node, false);
  if (node.is_sequence() && !node.as_sequence()->empty()) return flow_text(node);
  return node.is_sequence() ? "[]" : "{}";
}

void emit_sequence(std::string& out, const Sequence& seq, std::size_t indent, bool first_inline);

void emit_mapping(std::string& out, const Mapping& map, std::size_t indent, bool first_inline) {
  for (std::size_t i = 0; i < map.size(); ++i) {
    const auto& entry = map[i];
    if (!(first_inline && i == 0)) out.append(indent, ' ');
    out += string_text(entry.key, false);
    out += ":";
    if (is_inline(entry.value)) {
      out += " " + inline_text(entry.value) + "\n";
    } else if (const auto* child = entry.value.as_mapping()) {
      out += "\n";
      emit_mapping(out, *child, indent + 2, false);
    } else {
      out += "\n";
      emit_sequence(out, *entry.value.as_sequence(), indent + 2, false);
    }
  }
}

void emit_sequence(std::string& out, const Sequence& seq, std::size_t indent, bool first_inline) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& item = seq[i];
    if (!(first_inline && i == 0)) out.append(indent, ' ');
    out += "-";
    if (is_inline(item)) {
      out += " " + inline_text(item) + "\n";
    } else if (const auto* child = item.as_mapping()) {
      out += " ";
      emit_mapping(out, *child, indent + 2, true);
    } else {
      out += " ";
      emit_sequence(out, *item.as_sequence(), indent + 2, true);
    }
  }
}

}  // namespace

std::string format_float(double value) {
  if (std::isnan(value)) return ".nan";
  if (std::isinf(value)) return value > 0 ? ".inf" : "-.inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string text(buf, ptr);
  if (text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

std::string scalar_text(const Node& scalar) { return scalar_in(scalar, false); }

std::string emit(const Node& root) {
  std::string out;
  if (is_inline(root)) {
    out = inline_text(root) + "\n";
  } else if (const auto* map = root.as_mapping()) {
    emit_mapping(out, *map, 0, false);
  } else {
    emit_sequence(out, *root.as_sequence(), 0, false);
  }
  return out;
}

// ---- Node helpers ----

std::optional<double> Node::as_number() const {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&value)) return *d;
  return std::nullopt;
}

const Node* Node::find(std::string_view key) const {
  const auto* map = as_mapping();
  if (map == nullptr) return nullptr;
  for (const auto& entry : *map) {
    if (entry.key == key) return &entry.value;
  }
  return nullptr;
}

std::string_view Node::kind_name() const {
  switch (value.index()) {
    case 0: return "null";
    case 1: return "boolean";
    case 2: return "integer";
    case 3: return "float";
    case 4: return "string";
    case 5: return "sequence";
    default: return "mapping";
  }
}

bool operator==(const Node& a, const Node& b) { return a.value == b.value; }

Node make_number(double value) {
  constexpr double kExactIntLimit = 9007199254740992.0;  // 2^53
  if (std::isfinite(value) && std::trunc(value) == value && std::fabs(value) < kExactIntLimit &&
      !(value == 0.0 && std::signbit(value))) {
    return Node{static_cast<std::int64_t>(value)};
  }
  return Node{value};
}

}  // namespace odl::yaml
