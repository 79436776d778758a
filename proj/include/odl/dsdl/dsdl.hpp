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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odl/core/error.hpp"
#include "odl/dsdl/document.hpp"
#include "odl/dsdl/sample.hpp"

namespace odl::dsdl {

struct DocumentResult {
  std::optional<DsdlDocument> document;
  Diagnostics diagnostics;

  bool ok() const { return document.has_value(); }
};

// Text to AST. Unknown top-level keys are dropped with an UnknownKey
// warning; any error diagnostic leaves `document` empty.
DocumentResult parse_document(std::string_view text, std::string_view path = {});

// Merges imported definitions into the document (imports first, in import
// order, then local definitions). Each name is looked up in the built-in
// template catalog, then as `<name>.yaml` under each search path in order.
DocumentResult resolve_imports(const DsdlDocument& doc,
                               std::span<const std::filesystem::path> search_paths = {});

// Checks every type invariant and type-checks inline samples. Output is
// ordered by source location and is empty iff the document is valid.
Diagnostics validate(const DsdlDocument& doc);

// Canonical text: fixed key order, 2-space indentation, LF line endings.
std::string serialize_document(const DsdlDocument& doc);
yaml::Node to_yaml(const DsdlDocument& doc);

// Schema for the document's data section; requires a resolved document.
std::optional<Schema> schema_of(const DsdlDocument& doc);

// ---- template catalog ----

struct Template {
  std::string_view name;
  std::string_view text;
};

const std::vector<Template>& template_catalog();
// Parsed template document, or nullptr when `name` is not built in.
const DsdlDocument* find_template(std::string_view name);

// Domain name referenced by every Label field of the built-in templates.
inline constexpr std::string_view kTemplateDomain = "ClassDom";

}  // namespace odl::dsdl
