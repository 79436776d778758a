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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "odl/core/error.hpp"

namespace odl::registry {

enum class LicenseFamily { CC, ODC, CDLA };

// Bit set over the four license conditions.
enum LicenseFlag : unsigned {
  BY = 1u << 0,
  SA = 1u << 1,
  NC = 1u << 2,
  ND = 1u << 3,
};

struct LicenseSpec {
  LicenseFamily family = LicenseFamily::CC;
  std::string variant;
  unsigned flags = 0;

  friend bool operator==(const LicenseSpec&, const LicenseSpec&) = default;
};

std::string_view family_name(LicenseFamily family);
std::optional<LicenseFamily> family_from_name(std::string_view name);
// "BY|SA" style rendering, "" for the empty set.
std::string flags_to_string(unsigned flags);

// Accepted combinations:
//   CC   CC0 {}, BY {BY}, BY-SA {BY,SA}, BY-NC {BY,NC}, BY-NC-SA {BY,NC,SA},
//        BY-ND {BY,ND}, BY-NC-ND {BY,NC,ND}
//   ODC  PDDL, ODC-BY, ODbL with no flags
//   CDLA Permissive-2.0, Sharing-1.0 with no flags
// Anything else yields an InvalidLicense diagnostic naming the broken rule.
std::optional<Diagnostic> validate_license(const LicenseSpec& spec);

struct Metafile {
  std::string publisher;
  std::optional<std::string> homepage;
  std::vector<std::string> paper_refs;
  std::vector<std::string> task_types;
  std::vector<std::string> data_types;
  LicenseSpec license;

  friend bool operator==(const Metafile&, const Metafile&) = default;
};

struct DataCard {
  std::string ns;  // "namespace" on the wire
  std::string name;
  std::string readme;
  Metafile metafile;

  std::string repo() const { return ns + "/" + name; }
  friend bool operator==(const DataCard&, const DataCard&) = default;
};

bool is_identifier(std::string_view text);

// Throws InvalidDataCard for shape problems and InvalidLicense when the
// license is not an accepted combination.
DataCard datacard_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DataCard& card);

struct ManifestEntry {
  std::string path;  // '/'-separated, relative to the dataset directory
  std::uint64_t size = 0;
  std::string sha256;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct FileManifest {
  std::vector<ManifestEntry> entries;
  std::uint64_t total_size = 0;

  friend bool operator==(const FileManifest&, const FileManifest&) = default;
};

// True for non-empty relative paths without '.', '..', empty segments or
// backslashes.
bool is_manifest_path(std::string_view path);

// Throws InvalidManifest on duplicate or escaping paths, malformed digests
// or a total that does not match the entries.
FileManifest manifest_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FileManifest& manifest);
void check_manifest(const FileManifest& manifest);

// Every regular file under `dir` in lexicographic path order, hashed.
// `exclude` names top-level files to skip (e.g. datacard.json).
FileManifest build_manifest(const std::filesystem::path& dir,
                            const std::vector<std::string>& exclude = {});

struct DatasetSummary {
  std::string ns;
  std::string name;
  std::vector<std::string> task_types;
  std::vector<std::string> data_types;
  std::string license;  // "CC BY-SA"
  std::uint64_t files = 0;
  std::uint64_t total_size = 0;
  std::int64_t updated = 0;  // seconds since the Unix epoch

  std::string repo() const { return ns + "/" + name; }
  friend bool operator==(const DatasetSummary&, const DatasetSummary&) = default;
};

DatasetSummary summary_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DatasetSummary& summary);

inline constexpr std::string_view kDataCardFile = "datacard.json";

}  // namespace odl::registry
