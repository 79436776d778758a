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
#include <limits>
#include <cstdlib>
#include <string>

#include "odl/dsdl/yaml.hpp"

namespace odl::yaml {
namespace {

struct SyntaxFailure {
  Diagnostic diagnostic;
};

bool is_valid_utf8(std::string_view text, std::size_t& bad_offset) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      bad_offset = i;
      return false;
    }
    if (i + extra >= text.size()) {
      bad_offset = i;
      return false;
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) {
        bad_offset = i;
        return false;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    const bool overlong = (extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
                          (extra == 3 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      bad_offset = i;
      return false;
    }
    i += extra + 1;
  }
  return true;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view path) : path_(path) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      auto line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.push_back(line);
      if (end == text.size()) break;
      start = end + 1;
    }
  }

  Node parse_document() {
    skip_to_content();
    if (!eof() && col_ == 0 && trimmed_rest() == "---") {
      next_line();
      skip_to_content();
    }
    if (!eof() && rest().starts_with('%')) {
      fail(ErrorCode::UnsupportedFeature, "directives are not supported");
    }
    Node root = parse_block(0);
    skip_to_content();
    if (!eof()) {
      if (col_ == 0 && (trimmed_rest() == "---" || trimmed_rest() == "...")) {
        fail(ErrorCode::UnsupportedFeature, "multiple documents are not supported");
      }
      fail(ErrorCode::Syntax, "unexpected content after document end");
    }
    return root;
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t line_ = 0;
  std::size_t col_ = 0;
  std::string path_;
  static constexpr int kMaxDepth = 256;
  int depth_ = 0;

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) p.fail(ErrorCode::Syntax, "nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
  };

  [[noreturn]] void fail(ErrorCode code, const std::string& message) const {
    throw SyntaxFailure{Diagnostic::error(code, message, location())};
  }

  Location location() const {
    return Location{path_, static_cast<int>(line_ + 1), static_cast<int>(col_ + 1)};
  }
  Mark mark() const { return Mark{static_cast<int>(line_ + 1), static_cast<int>(col_ + 1)}; }

  bool eof() const { return line_ >= lines_.size(); }
  std::string_view current_line() const { return lines_[line_]; }
  std::string_view rest() const {
    const auto line = current_line();
    return col_ < line.size() ? line.substr(col_) : std::string_view{};
  }
  bool at_document_marker() const {
    return col_ == 0 && (trimmed_rest() == "---" || trimmed_rest() == "...");
  }

  std::string_view trimmed_rest() const {
    auto r = rest();
    while (!r.empty() && (r.back() == ' ' || r.back() == '\t')) r.remove_suffix(1);
    return r;
  }
  char peek() const {
    const auto r = rest();
    return r.empty() ? '\0' : r.front();
  }
  void next_line() {
    ++line_;
    col_ = 0;
  }

  // Advances to the next character that is neither whitespace nor part of
  // a comment. At the start of a line, leading tabs are rejected.
  void skip_to_content() {
    while (!eof()) {
      const auto line = current_line();
      std::size_t pos = col_;
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) {
        if (line[pos] == '\t' && col_ == 0) {
          // Tabs are acceptable on lines that turn out to be blank.
          auto tail = line.substr(pos);
          auto first = tail.find_first_not_of(" \t");
          if (first != std::string_view::npos && tail[first] != '#') {
            col_ = pos;
            fail(ErrorCode::Syntax, "tab characters are not allowed in indentation");
          }
        }
        ++pos;
      }
      if (pos >= line.size() || line[pos] == '#') {
        next_line();
        continue;
      }
      col_ = pos;
      return;
    }
  }

  void skip_inline_spaces() {
    const auto line = current_line();
    while (col_ < line.size() && (line[col_] == ' ' || line[col_] == '\t')) ++col_;
  }

  bool at_line_end_or_comment() {
    skip_inline_spaces();
    const auto r = rest();
    return r.empty() || r.front() == '#';
  }

  void expect_line_end() {
    const std::size_t before = col_;
    skip_inline_spaces();
    const auto r = rest();
    if (r.empty()) {
      next_line();
      return;
    }
    if (r.front() == '#' && col_ > before) {
      next_line();
      return;
    }
    fail(ErrorCode::Syntax, "unexpected trailing content");
  }

  static bool is_seq_indicator(std::string_view r) {
    return !r.empty() && r.front() == '-' && (r.size() == 1 || r[1] == ' ' || r[1] == '\t');
  }

  // Position of the ':' that ends a block mapping key in `r`, if `r` starts
  // with one.
  static std::optional<std::size_t> find_key_colon(std::string_view r) {
    if (r.empty()) return std::nullopt;
    std::size_t pos = 0;
    if (r.front() == '"' || r.front() == '\'') {
      const char quote = r.front();
      pos = 1;
      while (pos < r.size()) {
        if (quote == '"' && r[pos] == '\\') {
          pos += 2;
          continue;
        }
        if (r[pos] == quote) {
          if (quote == '\'' && pos + 1 < r.size() && r[pos + 1] == '\'') {
            pos += 2;
            continue;
          }
          break;
        }
        ++pos;
      }
      if (pos >= r.size()) return std::nullopt;
      ++pos;
      while (pos < r.size() && r[pos] == ' ') ++pos;
      if (pos < r.size() && r[pos] == ':' && (pos + 1 == r.size() || r[pos + 1] == ' ' ||
                                              r[pos + 1] == '\t')) {
        return pos;
      }
      return std::nullopt;
    }
    if (r.front() == '[' || r.front() == '{' || is_seq_indicator(r)) return std::nullopt;
    for (pos = 0; pos < r.size(); ++pos) {
      if (r[pos] == '#' && pos > 0 && (r[pos - 1] == ' ' || r[pos - 1] == '\t')) {
        return std::nullopt;
      }
      if (r[pos] == ':' && (pos + 1 == r.size() || r[pos + 1] == ' ' || r[pos + 1] == '\t')) {
        return pos;
      }
    }
    return std::nullopt;
  }

  Node parse_block(std::size_t min_indent) {
    DepthGuard guard(*this);
    skip_to_content();
    if (eof() || col_ < min_indent) {
      Node empty;
      empty.mark = mark();
      return empty;
    }
    const auto r = rest();
    if (is_seq_indicator(r)) return parse_block_sequence(col_);
    if (find_key_colon(r)) return parse_block_mapping(col_);
    Node value = parse_inline_value();
    expect_line_end();
    return value;
  }

  Node parse_block_sequence(std::size_t indent) {
    Node node{Sequence{}};
    node.mark = mark();
    auto& items = std::get<Sequence>(node.value);
    while (true) {
      col_ += 1;  // '-'
      if (at_line_end_or_comment()) {
        next_line();
        skip_to_content();
        if (!eof() && col_ > indent) {
          items.push_back(parse_block(indent + 1));
        } else {
          items.emplace_back();
        }
      } else {
        items.push_back(parse_block(indent + 1));
      }
      skip_to_content();
      if (eof() || at_document_marker()) break;
      if (col_ == indent && is_seq_indicator(rest())) continue;
      if (col_ > indent) fail(ErrorCode::Syntax, "unexpected indentation in sequence");
      break;
    }
    return node;
  }

  Node parse_block_mapping(std::size_t indent) {
    Node node{Mapping{}};
    node.mark = mark();
    auto& entries = std::get<Mapping>(node.value);
    while (true) {
      const Mark key_mark = mark();
      const Location key_location = location();
      std::string key = parse_block_key();
      for (const auto& e : entries) {
        if (e.key == key) {
          throw SyntaxFailure{
              Diagnostic::error(ErrorCode::DuplicateKey, "duplicate key '" + key + "'", key_location)};
        }
      }
      Node value;
      if (at_line_end_or_comment()) {
        next_line();
        skip_to_content();
        if (eof()) {
          value.mark = mark();
        } else if (col_ > indent) {
          value = parse_block(indent + 1);
        } else if (col_ == indent && is_seq_indicator(rest())) {
          value = parse_block_sequence(indent);
        } else {
          value.mark = key_mark;
        }
      } else {
        if (is_seq_indicator(rest())) {
          fail(ErrorCode::Syntax, "block sequence cannot start on the same line as its key");
        }
        value = parse_inline_value();
        expect_line_end();
      }
      entries.push_back(Entry{std::move(key), std::move(value), key_mark});
      skip_to_content();
      if (eof() || at_document_marker()) break;
      if (col_ == indent) {
        if (is_seq_indicator(rest())) fail(ErrorCode::Syntax, "unexpected sequence entry in mapping");
        continue;
      }
      if (col_ > indent) fail(ErrorCode::Syntax, "unexpected indentation in mapping");
      break;
    }
    return node;
  }

  std::string parse_block_key() {
    const auto r = rest();
    const auto colon = find_key_colon(r);
    if (!colon) fail(ErrorCode::Syntax, "expected a mapping key");
    std::string key;
    if (r.front() == '"' || r.front() == '\'') {
      key = r.front() == '"' ? parse_double_quoted() : parse_single_quoted();
      skip_inline_spaces();
    } else {
      auto text = r.substr(0, *colon);
      while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
      check_plain_start(text);
      key = std::string(text);
      col_ += *colon;
    }
    if (peek() != ':') fail(ErrorCode::Syntax, "expected ':' after key");
    col_ += 1;
    return key;
  }

  void check_plain_start(std::string_view text) {
    if (text.empty()) return;
    switch (text.front()) {
      case '&':
        fail(ErrorCode::UnsupportedFeature, "anchors are not supported");
      case '*':
        fail(ErrorCode::UnsupportedFeature, "aliases are not supported");
      case '!':
        fail(ErrorCode::UnsupportedFeature, "tags are not supported");
      case '|':
      case '>':
        fail(ErrorCode::UnsupportedFeature, "block scalars are not supported");
      case '?':
        if (text.size() == 1 || text[1] == ' ') {
          fail(ErrorCode::UnsupportedFeature, "complex keys are not supported");
        }
        break;
      case '%':
      case '@':
      case '`':
        fail(ErrorCode::Syntax, std::string("reserved character '") + text.front() + "'");
      case ']':
      case '}':
      case ',':
        fail(ErrorCode::Syntax, std::string("unexpected '") + text.front() + "'");
      default:
        break;
    }
  }

  // A scalar or flow collection that starts at the cursor.
  Node parse_inline_value() {
    const Mark m = mark();
    const char c = peek();
    Node node;
    if (c == '[' || c == '{') {
      node = parse_flow_node();
    } else if (c == '"') {
      node = Node{parse_double_quoted()};
    } else if (c == '\'') {
      node = Node{parse_single_quoted()};
    } else {
      const auto r = rest();
      std::size_t end = r.size();
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == '#' && i > 0 && (r[i - 1] == ' ' || r[i - 1] == '\t')) {
          end = i;
          break;
        }
      }
      auto text = r.substr(0, end);
      while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
      check_plain_start(text);
      if (text.find(": ") != std::string_view::npos || text.find(":\t") != std::string_view::npos ||
          (!text.empty() && text.back() == ':')) {
        fail(ErrorCode::Syntax, "mapping values are not allowed here");
      }
      col_ += text.size();
      node = resolve_plain(text);
    }
    node.mark = m;
    return node;
  }

  std::string parse_double_quoted() {
    const auto line = current_line();
    std::size_t pos = col_ + 1;
    std::string out;
    while (true) {
      if (pos >= line.size()) fail(ErrorCode::Syntax, "unterminated double-quoted string");
      const char c = line[pos];
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        ++pos;
        continue;
      }
      if (pos + 1 >= line.size()) fail(ErrorCode::Syntax, "unterminated escape sequence");
      const char e = line[pos + 1];
      pos += 2;
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case '/': out.push_back('/'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case '0': out.push_back('\0'); break;
        case ' ': out.push_back(' '); break;
        case 'x':
        case 'u':
        case 'U': {
          const std::size_t digits = e == 'x' ? 2 : (e == 'u' ? 4 : 8);
          if (pos + digits > line.size()) fail(ErrorCode::Syntax, "truncated escape sequence");
          std::uint32_t cp = 0;
          const auto hex = line.substr(pos, digits);
          auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
          if (ec != std::errc{} || ptr != hex.data() + hex.size() || cp > 0x10FFFF ||
              (cp >= 0xD800 && cp <= 0xDFFF)) {
            fail(ErrorCode::Syntax, "invalid escape sequence");
          }
          append_utf8(out, cp);
          pos += digits;
          break;
        }
        default:
          col_ = pos - 2;
          fail(ErrorCode::Syntax, std::string("unknown escape '\\") + e + "'");
      }
    }
    col_ = pos + 1;
    return out;
  }

  std::string parse_single_quoted() {
    const auto line = current_line();
    std::size_t pos = col_ + 1;
    std::string out;
    while (true) {
      if (pos >= line.size()) fail(ErrorCode::Syntax, "unterminated single-quoted string");
      if (line[pos] == '\'') {
        if (pos + 1 < line.size() && line[pos + 1] == '\'') {
          out.push_back('\'');
          pos += 2;
          continue;
        }
        break;
      }
      out.push_back(line[pos]);
      ++pos;
    }
    col_ = pos + 1;
    return out;
  }

  // Whitespace, newlines and comments inside flow collections.
  void skip_flow_space() {
    while (true) {
      if (eof()) fail(ErrorCode::Syntax, "unterminated flow collection");
      const auto line = current_line();
      while (col_ < line.size() && (line[col_] == ' ' || line[col_] == '\t')) ++col_;
      if (col_ >= line.size() || (line[col_] == '#' && (col_ == 0 || line[col_ - 1] == ' ' ||
                                                         line[col_ - 1] == '\t'))) {
        next_line();
        continue;
      }
      return;
    }
  }

  Node parse_flow_node() {
    DepthGuard guard(*this);
    const Mark m = mark();
    const char open = peek();
    ++col_;
    if (open == '[') {
      Node node{Sequence{}};
      node.mark = m;
      auto& items = std::get<Sequence>(node.value);
      while (true) {
        skip_flow_space();
        if (peek() == ']') {
          ++col_;
          break;
        }
        items.push_back(parse_flow_item());
        skip_flow_space();
        if (peek() == ',') {
          ++col_;
          continue;
        }
        if (peek() == ']') {
          ++col_;
          break;
        }
        fail(ErrorCode::Syntax, "expected ',' or ']' in flow sequence");
      }
      return node;
    }
    Node node{Mapping{}};
    node.mark = m;
    auto& entries = std::get<Mapping>(node.value);
    while (true) {
      skip_flow_space();
      if (peek() == '}') {
        ++col_;
        break;
      }
      const Mark key_mark = mark();
      const Location key_location = location();
      std::string key;
      if (peek() == '"') {
        key = parse_double_quoted();
      } else if (peek() == '\'') {
        key = parse_single_quoted();
      } else {
        key = read_flow_plain();
      }
      skip_flow_space();
      if (peek() != ':') fail(ErrorCode::Syntax, "expected ':' in flow mapping");
      ++col_;
      for (const auto& e : entries) {
        if (e.key == key) {
          throw SyntaxFailure{
              Diagnostic::error(ErrorCode::DuplicateKey, "duplicate key '" + key + "'", key_location)};
        }
      }
      skip_flow_space();
      Node value;
      if (peek() == ',' || peek() == '}') {
        value.mark = mark();
      } else {
        value = parse_flow_item();
      }
      entries.push_back(Entry{std::move(key), std::move(value), key_mark});
      skip_flow_space();
      if (peek() == ',') {
        ++col_;
        continue;
      }
      if (peek() == '}') {
        ++col_;
        break;
      }
      fail(ErrorCode::Syntax, "expected ',' or '}' in flow mapping");
    }
    return node;
  }

  Node parse_flow_item() {
    const Mark m = mark();
    const char c = peek();
    if (c == '[' || c == '{') return parse_flow_node();
    Node node;
    if (c == '"') {
      node = Node{parse_double_quoted()};
    } else if (c == '\'') {
      node = Node{parse_single_quoted()};
    } else {
      node = resolve_plain(read_flow_plain());
    }
    node.mark = m;
    return node;
  }

  std::string read_flow_plain() {
    const auto r = rest();
    std::size_t end = 0;
    while (end < r.size()) {
      const char c = r[end];
      if (c == ',' || c == '[' || c == ']' || c == '{' || c == '}') break;
      if (c == ':' && (end + 1 == r.size() || r[end + 1] == ' ' || r[end + 1] == ',' ||
                       r[end + 1] == ']' || r[end + 1] == '}')) {
        break;
      }
      if (c == '#' && end > 0 && (r[end - 1] == ' ' || r[end - 1] == '\t')) break;
      ++end;
    }
    auto text = r.substr(0, end);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) fail(ErrorCode::Syntax, "expected a value in flow collection");
    check_plain_start(text);
    if (is_seq_indicator(text)) fail(ErrorCode::Syntax, "block sequence inside flow collection");
    col_ += text.size();
    return std::string(text);
  }
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// [-+]?[0-9]+
bool looks_like_int(std::string_view t) {
  if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
  if (t.empty()) return false;
  for (char c : t) {
    if (!is_digit(c)) return false;
  }
  return true;
}

// [-+]?(\.[0-9]+|[0-9]+(\.[0-9]*)?)([eE][-+]?[0-9]+)?
bool looks_like_float(std::string_view t) {
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
  std::size_t int_digits = 0;
  while (i < t.size() && is_digit(t[i])) {
    ++i;
    ++int_digits;
  }
  std::size_t frac_digits = 0;
  if (i < t.size() && t[i] == '.') {
    ++i;
    while (i < t.size() && is_digit(t[i])) {
      ++i;
      ++frac_digits;
    }
  }
  if (int_digits == 0 && frac_digits == 0) return false;
  if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
    ++i;
    if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    std::size_t exp_digits = 0;
    while (i < t.size() && is_digit(t[i])) {
      ++i;
      ++exp_digits;
    }
    if (exp_digits == 0) return false;
  }
  return i == t.size();
}

}  // namespace

Node resolve_plain(std::string_view text) {
  if (text.empty() || text == "~" || text == "null" || text == "Null" || text == "NULL") {
    return Node{};
  }
  if (text == "true" || text == "True" || text == "TRUE") return Node{true};
  if (text == "false" || text == "False" || text == "FALSE") return Node{false};
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'o')) {
    const int base = text[1] == 'x' ? 16 : 8;
    std::int64_t value = 0;
    const auto body = text.substr(2);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value, base);
    if (ec == std::errc{} && ptr == body.data() + body.size()) return Node{value};
  }
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  if (looks_like_int(text)) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc{} && ptr == digits.data() + digits.size()) return Node{value};
    // Out of int64 range: fall through to floating point.
  }
  if (looks_like_int(text) || looks_like_float(text)) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ptr == digits.data() + digits.size() &&
        (ec == std::errc{} || ec == std::errc::result_out_of_range)) {
      if (ec == std::errc::result_out_of_range) {
        value = std::strtod(std::string(digits).c_str(), nullptr);
      }
      return Node{value};
    }
  }
  std::string_view inf = text;
  bool negative = false;
  if (!inf.empty() && (inf.front() == '+' || inf.front() == '-')) {
    negative = inf.front() == '-';
    inf.remove_prefix(1);
  }
  if (inf == ".inf" || inf == ".Inf" || inf == ".INF") {
    const double value = std::numeric_limits<double>::infinity();
    return Node{negative ? -value : value};
  }
  if (text == ".nan" || text == ".NaN" || text == ".NAN") {
    return Node{std::numeric_limits<double>::quiet_NaN()};
  }
  return Node{std::string(text)};
}

ParseResult parse(std::string_view text, std::string_view path) {
  ParseResult result;
  std::size_t bad = 0;
  if (!is_valid_utf8(text, bad)) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < bad; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    result.diagnostics.push_back(Diagnostic::error(ErrorCode::Syntax, "input is not valid UTF-8",
                                                   Location{std::string(path), line, column}));
    return result;
  }
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  try {
    Parser parser(text, path);
    result.root = parser.parse_document();
  } catch (const SyntaxFailure& failure) {
    result.diagnostics.push_back(failure.diagnostic);
  }
  return result;
}

}  // namespace odl::yaml
