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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "odl/dsdl/yaml.hpp"
#include "support/generators.hpp"

using namespace odl;
using yaml::Node;

namespace {

Node parse_ok(std::string_view text) {
  auto result = yaml::parse(text, "t.yaml");
  for (const auto& d : result.diagnostics) MESSAGE(d.to_string());
  REQUIRE(result.root.has_value());
  REQUIRE_FALSE(has_errors(result.diagnostics));
  return *result.root;
}

ErrorCode first_code(std::string_view text) {
  auto result = yaml::parse(text, "t.yaml");
  const auto* err = first_error(result.diagnostics);
  REQUIRE(err != nullptr);
  return err->code;
}

}  // namespace

TEST_CASE("plain scalars resolve with the core schema") {
  CHECK(yaml::resolve_plain("null").is_null());
  CHECK(yaml::resolve_plain("~").is_null());
  CHECK(yaml::resolve_plain("true") == Node(true));
  CHECK(yaml::resolve_plain("False") == Node(false));
  CHECK(yaml::resolve_plain("42") == Node(42));
  CHECK(yaml::resolve_plain("-7") == Node(-7));
  CHECK(yaml::resolve_plain("0x1F") == Node(31));
  CHECK(yaml::resolve_plain("3.5") == Node(3.5));
  CHECK(yaml::resolve_plain("1e3") == Node(1000.0));
  CHECK(std::isinf(*yaml::resolve_plain(".inf").as_number()));
  CHECK(std::isnan(*yaml::resolve_plain(".nan").as_number()));
  CHECK(yaml::resolve_plain("yes") == Node("yes"));
  CHECK(yaml::resolve_plain("1.2.3") == Node("1.2.3"));
}

TEST_CASE("block mappings and sequences") {
  auto root = parse_ok(R"(
# comment
a: 1
b:
  - x
  - y: 2
    z: [1, 2, {k: v}]
c:
- 3
- 4
d: "quoted: value"
e: 'it''s'
f: {}
g: []
)");
  REQUIRE(root.is_mapping());
  CHECK(*root.find("a") == Node(1));
  const auto& b = *root.find("b")->as_sequence();
  REQUIRE(b.size() == 2);
  CHECK(b[0] == Node("x"));
  CHECK(*b[1].find("y") == Node(2));
  CHECK(b[1].find("z")->as_sequence()->size() == 3);
  CHECK(root.find("c")->as_sequence()->size() == 2);
  CHECK(*root.find("d") == Node("quoted: value"));
  CHECK(*root.find("e") == Node("it's"));
  CHECK(root.find("f")->as_mapping()->empty());
  CHECK(root.find("g")->as_sequence()->empty());
}

TEST_CASE("flow collections may span lines") {
  auto root = parse_ok("a: [1,\n  2,\n  3]\nb: {x: 1,\n  y: 2}\n");
  CHECK(root.find("a")->as_sequence()->size() == 3);
  CHECK(root.find("b")->as_mapping()->size() == 2);
}

TEST_CASE("double-quoted escapes") {
  auto root = parse_ok(R"(s: "a\tb\n\u00e9\x41\\")");
  CHECK(*root.find("s") == Node(std::string("a\tb\n\xc3\xa9" "A\\")));
}

TEST_CASE("marks report 1-based line and column") {
  auto root = parse_ok("a: 1\nbb:\n  c: x\n");
  const auto& map = *root.as_mapping();
  CHECK(map[1].key_mark.line == 2);
  CHECK(map[1].key_mark.column == 1);
  CHECK(root.find("bb")->find("c")->mark.line == 3);
  CHECK(root.find("bb")->find("c")->mark.column == 6);
}

TEST_CASE("unsupported YAML features are rejected") {
  CHECK(first_code("a: &x 1\n") == ErrorCode::UnsupportedFeature);
  CHECK(first_code("a: *x\n") == ErrorCode::UnsupportedFeature);
  CHECK(first_code("a: !!str 1\n") == ErrorCode::UnsupportedFeature);
  CHECK(first_code("a: |\n  text\n") == ErrorCode::UnsupportedFeature);
  CHECK(first_code("a: 1\n---\nb: 2\n") == ErrorCode::UnsupportedFeature);
  CHECK(first_code("%YAML 1.2\n---\na: 1\n") == ErrorCode::UnsupportedFeature);
}

TEST_CASE("syntax errors carry a location") {
  auto result = yaml::parse("a: 1\n b: 2\n", "bad.yaml");
  const auto* err = first_error(result.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->location.path == "bad.yaml");
  CHECK(err->location.line == 2);

  CHECK(first_code("a: [1, 2\n") == ErrorCode::Syntax);
  CHECK(first_code("a: \"open\n") == ErrorCode::Syntax);
  CHECK(first_code("a:\n\t- 1\n") == ErrorCode::Syntax);
}

TEST_CASE("duplicate keys are errors") {
  CHECK(first_code("a: 1\na: 2\n") == ErrorCode::DuplicateKey);
  CHECK(first_code("m: {x: 1, x: 2}\n") == ErrorCode::DuplicateKey);
}

TEST_CASE("invalid UTF-8 is rejected") {
  CHECK(first_code("a: \xff\xfe\n") == ErrorCode::Syntax);
  CHECK(first_code("a: \xc3\n") == ErrorCode::Syntax);
}

TEST_CASE("empty input yields a null root") {
  auto result = yaml::parse("# only a comment\n");
  REQUIRE(result.root.has_value());
  CHECK(result.root->is_null());
}

TEST_CASE("emitter output is canonical") {
  Node root(yaml::Mapping{
      {"name", Node("x"), {}},
      {"list", Node(yaml::Sequence{Node(1), Node(2.5), Node("a b")}), {}},
      {"nested", Node(yaml::Mapping{{"k", Node(true), {}}}), {}},
      {"records", Node(yaml::Sequence{Node(yaml::Mapping{{"a", Node(1), {}}, {"b", Node(), {}}})}), {}},
      {"empty", Node(yaml::Sequence{}), {}},
  });
  CHECK(yaml::emit(root) ==
        "name: x\n"
        "list: [1, 2.5, a b]\n"
        "nested:\n"
        "  k: true\n"
        "records:\n"
        "  - a: 1\n"
        "    b: null\n"
        "empty: []\n");
}

TEST_CASE("strings that would resolve differently are quoted") {
  for (const char* s : {"true", "null", "12", "1.5", "- x", "a: b", "#c", "", " lead", "[x]"}) {
    Node n(yaml::Mapping{{"k", Node(s), {}}});
    auto text = yaml::emit(n);
    CAPTURE(text);
    CHECK(parse_ok(text) == n);
  }
}

TEST_CASE("format_float round-trips and stays a float") {
  for (double d : {0.0, -0.0, 1.0, 0.1, 1e300, -2.5e-10, 123456789.0,
                   std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}) {
    auto text = yaml::format_float(d);
    CAPTURE(text);
    auto back = yaml::resolve_plain(text);
    REQUIRE(std::holds_alternative<double>(back.value));
    CHECK(std::get<double>(back.value) == d);
  }
  CHECK(std::isnan(std::get<double>(yaml::resolve_plain(yaml::format_float(std::nan(""))).value)));
}

TEST_CASE("make_number keeps integral values as integers") {
  CHECK(yaml::make_number(48.0) == Node(48));
  CHECK(yaml::make_number(10.5) == Node(10.5));
  CHECK(std::holds_alternative<double>(yaml::make_number(-0.0).value));
}

TEST_CASE("random trees round-trip through emit and parse") {
  odl::testing::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    auto tree = odl::testing::random_yaml(rng, 4);
    if (!tree.is_mapping()) tree = Node(yaml::Mapping{{"root", tree, {}}});
    const auto text = yaml::emit(tree);
    CAPTURE(text);
    auto back = yaml::parse(text);
    REQUIRE_FALSE(has_errors(back.diagnostics));
    REQUIRE(back.root.has_value());
    CHECK(*back.root == tree);
    CHECK(yaml::emit(*back.root) == text);
  }
}
