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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace odl {

// Closed set of diagnostic and error codes shared by every module. The
// string form returned by code_name() is stable and is what users see.
enum class ErrorCode {
  // document syntax and structure
  Syntax,
  DuplicateKey,
  UnsupportedFeature,
  MissingVersion,
  UnsupportedVersion,
  UnknownKey,
  BadDefinition,
  BadTypeExpr,
  MissingSampleType,
  // imports
  ImportNotFound,
  ImportCycle,
  UnresolvedImport,
  DuplicateDefinition,
  // type system
  UnknownType,
  UnknownDomain,
  NotARecord,
  EmptyDomain,
  DuplicateClass,
  EmptyClassName,
  DuplicateField,
  UnknownOptionalField,
  RecursiveType,
  ListTooDeep,
  // samples
  MissingField,
  UnexpectedField,
  TypeMismatch,
  UnknownLabel,
  EmptyDataset,
  // object locators and I/O
  InvalidLocator,
  UnsupportedScheme,
  NotFound,
  RemoteError,
  RemoteDisabled,
  UnknownBucket,
  IntegrityError,
  WriteError,
  // dataset engine
  ValidationFailed,
  EmptyConcat,
  IncompatibleSchemas,
  MediaUnavailable,
  UnknownResolution,
  IndexOutOfRange,
  UnsupportedForRender,
  // converters
  ConversionError,
  // registry
  InvalidLicense,
  InvalidDataCard,
  InvalidManifest,
  DatasetNotFound,
  DatasetExists,
  StartupError,
  // command line
  UsageError,
};

std::string_view code_name(ErrorCode code);
std::optional<ErrorCode> code_from_name(std::string_view name);
// Every code in declaration order.
const std::vector<ErrorCode>& all_codes();

enum class Severity { Error, Warning };

struct Location {
  std::string path;
  int line = 0;  // 1-based; 0 when unknown
  int column = 0;

  bool known() const { return line > 0; }
  friend bool operator==(const Location&, const Location&) = default;
};

struct Diagnostic {
  Severity severity = Severity::Error;
  ErrorCode code = ErrorCode::Syntax;
  std::string message;
  Location location;

  static Diagnostic error(ErrorCode code, std::string message, Location loc = {});
  static Diagnostic warning(ErrorCode code, std::string message, Location loc = {});

  bool is_error() const { return severity == Severity::Error; }
  // "path:line:col: error[Code]: message"
  std::string to_string() const;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diags);
const Diagnostic* first_error(const Diagnostics& diags);
// Stable sort by (path, line, column); unknown locations sort first.
void sort_by_location(Diagnostics& diags);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, Diagnostics diagnostics);

  ErrorCode code() const noexcept { return code_; }
  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  ErrorCode code_;
  Diagnostics diagnostics_;
};

}  // namespace odl
