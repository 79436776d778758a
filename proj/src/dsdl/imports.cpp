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

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>

#include "odl/core/files.hpp"
#include "odl/dsdl/dsdl.hpp"

namespace odl::dsdl {
namespace {

bool is_safe_module_name(std::string_view name) {
  if (name.empty() || name == "." || name == "..") return false;
  return name.find_first_of("/\\") == std::string_view::npos;
}

class ImportResolver {
 public:
  ImportResolver(std::string path, std::span<const std::filesystem::path> search_paths)
      : path_(std::move(path)), search_paths_(search_paths) {}

  void load(const std::string& name, std::vector<std::string>& stack) {
    if (std::find(stack.begin(), stack.end(), name) != stack.end()) {
      error(ErrorCode::ImportCycle, "import cycle through '" + name + "'");
      return;
    }
    if (loaded_.count(name) != 0) return;

    const DsdlDocument* module = find_template(name);
    DsdlDocument from_file;
    if (module == nullptr && is_safe_module_name(name)) {
      for (const auto& dir : search_paths_) {
        const auto candidate = dir / (name + ".yaml");
        std::error_code ec;
        if (!std::filesystem::is_regular_file(candidate, ec)) continue;
        auto parsed = parse_document(read_file(candidate), candidate.string());
        diags_.insert(diags_.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
        if (!parsed.ok()) return;
        from_file = std::move(*parsed.document);
        module = &from_file;
        break;
      }
    }
    if (module == nullptr) {
      error(ErrorCode::ImportNotFound, "cannot find import '" + name +
                                           "' in the template catalog or search paths");
      return;
    }

    stack.push_back(name);
    for (const auto& nested : module->imports) load(nested, stack);
    stack.pop_back();

    for (const auto& def : module->defs) {
      if (find_definition(defs_, definition_name(def)) != nullptr) {
        error(ErrorCode::DuplicateDefinition, "definition '" + definition_name(def) +
                                                  "' imported from '" + name +
                                                  "' is already defined by another import");
        continue;
      }
      defs_.push_back(def);
    }
    loaded_.insert(name);
  }

  Definitions& defs() { return defs_; }
  Diagnostics& diagnostics() { return diags_; }

  void error(ErrorCode code, std::string message, Mark m = {}) {
    diags_.push_back(Diagnostic::error(code, std::move(message), Location{path_, m.line, m.column}));
  }

 private:
  std::string path_;
  std::span<const std::filesystem::path> search_paths_;
  Definitions defs_;
  Diagnostics diags_;
  std::set<std::string> loaded_;
};

}  // namespace

DocumentResult resolve_imports(const DsdlDocument& doc,
                               std::span<const std::filesystem::path> search_paths) {
  if (doc.imports.empty()) return DocumentResult{doc, {}};

  ImportResolver resolver(doc.source.path, search_paths);
  std::vector<std::string> stack;
  for (const auto& name : doc.imports) resolver.load(name, stack);

  auto merged = resolver.defs();
  for (const auto& def : doc.defs) {
    if (find_definition(merged, definition_name(def)) != nullptr) {
      resolver.error(ErrorCode::DuplicateDefinition,
                     "local definition '" + definition_name(def) +
                         "' collides with an imported definition",
                     definition_mark(def));
      continue;
    }
    merged.push_back(def);
  }

  auto diags = std::move(resolver.diagnostics());
  sort_by_location(diags);
  if (has_errors(diags)) return DocumentResult{std::nullopt, std::move(diags)};

  DsdlDocument resolved = doc;
  resolved.imports.clear();
  resolved.defs = std::move(merged);
  return DocumentResult{std::move(resolved), std::move(diags)};
}

}  // namespace odl::dsdl
