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

#include "odl/core/error.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <utility>

namespace odl {
namespace {

struct CodeEntry {
  ErrorCode code;
  std::string_view name;
};

constexpr std::array kCodeTable = {
    CodeEntry{ErrorCode::Syntax, "Syntax"},
    CodeEntry{ErrorCode::DuplicateKey, "DuplicateKey"},
    CodeEntry{ErrorCode::UnsupportedFeature, "UnsupportedFeature"},
    CodeEntry{ErrorCode::MissingVersion, "MissingVersion"},
    CodeEntry{ErrorCode::UnsupportedVersion, "UnsupportedVersion"},
    CodeEntry{ErrorCode::UnknownKey, "UnknownKey"},
    CodeEntry{ErrorCode::BadDefinition, "BadDefinition"},
    CodeEntry{ErrorCode::BadTypeExpr, "BadTypeExpr"},
    CodeEntry{ErrorCode::MissingSampleType, "MissingSampleType"},
    CodeEntry{ErrorCode::ImportNotFound, "ImportNotFound"},
    CodeEntry{ErrorCode::ImportCycle, "ImportCycle"},
    CodeEntry{ErrorCode::UnresolvedImport, "UnresolvedImport"},
    CodeEntry{ErrorCode::DuplicateDefinition, "DuplicateDefinition"},
    CodeEntry{ErrorCode::UnknownType, "UnknownType"},
    CodeEntry{ErrorCode::UnknownDomain, "UnknownDomain"},
    CodeEntry{ErrorCode::NotARecord, "NotARecord"},
    CodeEntry{ErrorCode::EmptyDomain, "EmptyDomain"},
    CodeEntry{ErrorCode::DuplicateClass, "DuplicateClass"},
    CodeEntry{ErrorCode::EmptyClassName, "EmptyClassName"},
    CodeEntry{ErrorCode::DuplicateField, "DuplicateField"},
    CodeEntry{ErrorCode::UnknownOptionalField, "UnknownOptionalField"},
    CodeEntry{ErrorCode::RecursiveType, "RecursiveType"},
    CodeEntry{ErrorCode::ListTooDeep, "ListTooDeep"},
    CodeEntry{ErrorCode::MissingField, "MissingField"},
    CodeEntry{ErrorCode::UnexpectedField, "UnexpectedField"},
    CodeEntry{ErrorCode::TypeMismatch, "TypeMismatch"},
    CodeEntry{ErrorCode::UnknownLabel, "UnknownLabel"},
    CodeEntry{ErrorCode::EmptyDataset, "EmptyDataset"},
    CodeEntry{ErrorCode::InvalidLocator, "InvalidLocator"},
    CodeEntry{ErrorCode::UnsupportedScheme, "UnsupportedScheme"},
    CodeEntry{ErrorCode::NotFound, "NotFound"},
    CodeEntry{ErrorCode::RemoteError, "RemoteError"},
    CodeEntry{ErrorCode::RemoteDisabled, "RemoteDisabled"},
    CodeEntry{ErrorCode::UnknownBucket, "UnknownBucket"},
    CodeEntry{ErrorCode::IntegrityError, "IntegrityError"},
    CodeEntry{ErrorCode::WriteError, "WriteError"},
    CodeEntry{ErrorCode::ValidationFailed, "ValidationFailed"},
    CodeEntry{ErrorCode::EmptyConcat, "EmptyConcat"},
    CodeEntry{ErrorCode::IncompatibleSchemas, "IncompatibleSchemas"},
    CodeEntry{ErrorCode::MediaUnavailable, "MediaUnavailable"},
    CodeEntry{ErrorCode::UnknownResolution, "UnknownResolution"},
    CodeEntry{ErrorCode::IndexOutOfRange, "IndexOutOfRange"},
    CodeEntry{ErrorCode::UnsupportedForRender, "UnsupportedForRender"},
    CodeEntry{ErrorCode::ConversionError, "ConversionError"},
    CodeEntry{ErrorCode::InvalidLicense, "InvalidLicense"},
    CodeEntry{ErrorCode::InvalidDataCard, "InvalidDataCard"},
    CodeEntry{ErrorCode::InvalidManifest, "InvalidManifest"},
    CodeEntry{ErrorCode::DatasetNotFound, "DatasetNotFound"},
    CodeEntry{ErrorCode::DatasetExists, "DatasetExists"},
    CodeEntry{ErrorCode::StartupError, "StartupError"},
    CodeEntry{ErrorCode::UsageError, "UsageError"},
};

std::string compose_what(ErrorCode code, const std::string& message,
                         const Diagnostics& diags) {
  std::string what = std::string(code_name(code)) + ": " + message;
  if (const auto* first = first_error(diags); first != nullptr) {
    what += " (first: " + first->to_string() + ")";
  }
  return what;
}

}  // namespace

std::string_view code_name(ErrorCode code) {
  for (const auto& entry : kCodeTable) {
    if (entry.code == code) return entry.name;
  }
  return "Unknown";
}

std::optional<ErrorCode> code_from_name(std::string_view name) {
  for (const auto& entry : kCodeTable) {
    if (entry.name == name) return entry.code;
  }
  return std::nullopt;
}

const std::vector<ErrorCode>& all_codes() {
  static const std::vector<ErrorCode> codes = [] {
    std::vector<ErrorCode> out;
    for (const auto& entry : kCodeTable) out.push_back(entry.code);
    return out;
  }();
  return codes;
}

Diagnostic Diagnostic::error(ErrorCode code, std::string message, Location loc) {
  return Diagnostic{Severity::Error, code, std::move(message), std::move(loc)};
}

Diagnostic Diagnostic::warning(ErrorCode code, std::string message, Location loc) {
  return Diagnostic{Severity::Warning, code, std::move(message), std::move(loc)};
}

std::string Diagnostic::to_string() const {
  std::string out;
  if (!location.path.empty()) out += location.path + ":";
  if (location.known()) {
    out += std::to_string(location.line) + ":" + std::to_string(location.column) + ":";
  }
  if (!out.empty()) out += " ";
  out += is_error() ? "error[" : "warning[";
  out += code_name(code);
  out += "]: ";
  out += message;
  return out;
}

bool has_errors(const Diagnostics& diags) {
  return first_error(diags) != nullptr;
}

const Diagnostic* first_error(const Diagnostics& diags) {
  for (const auto& d : diags) {
    if (d.is_error()) return &d;
  }
  return nullptr;
}

void sort_by_location(Diagnostics& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.location.path, a.location.line, a.location.column) <
           std::tie(b.location.path, b.location.line, b.location.column);
  });
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(compose_what(code, message, {})), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, Diagnostics diagnostics)
    : std::runtime_error(compose_what(code, message, diagnostics)),
      code_(code),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace odl
