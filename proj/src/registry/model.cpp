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

#include "odl/registry/model.hpp"

#include <algorithm>
#include <array>
#include <regex>
#include <set>

#include "odl/core/digest.hpp"

namespace odl::registry {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Allowed {
  LicenseFamily family;
  std::string_view variant;
  unsigned flags;
};

constexpr std::array kAllowed{
    Allowed{LicenseFamily::CC, "CC0", 0},
    Allowed{LicenseFamily::CC, "BY", BY},
    Allowed{LicenseFamily::CC, "BY-SA", BY | SA},
    Allowed{LicenseFamily::CC, "BY-NC", BY | NC},
    Allowed{LicenseFamily::CC, "BY-NC-SA", BY | NC | SA},
    Allowed{LicenseFamily::CC, "BY-ND", BY | ND},
    Allowed{LicenseFamily::CC, "BY-NC-ND", BY | NC | ND},
    Allowed{LicenseFamily::ODC, "PDDL", 0},
    Allowed{LicenseFamily::ODC, "ODC-BY", 0},
    Allowed{LicenseFamily::ODC, "ODbL", 0},
    Allowed{LicenseFamily::CDLA, "Permissive-2.0", 0},
    Allowed{LicenseFamily::CDLA, "Sharing-1.0", 0},
};

constexpr std::array<std::pair<LicenseFlag, std::string_view>, 4> kFlagNames{
    {{BY, "BY"}, {SA, "SA"}, {NC, "NC"}, {ND, "ND"}}};

Diagnostic license_error(const std::string& message) {
  return Diagnostic::error(ErrorCode::InvalidLicense, message);
}

[[noreturn]] void bad_card(const std::string& message) { throw Error(ErrorCode::InvalidDataCard, message); }
[[noreturn]] void bad_manifest(const std::string& message) { throw Error(ErrorCode::InvalidManifest, message); }

const json& require(const json& j, const char* key, json::value_t type, void (*fail)(const std::string&)) {
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing '") + key + "'");
  const bool ok = type == json::value_t::number_unsigned ? it->is_number_unsigned() : it->type() == type;
  if (!ok) fail(std::string("'") + key + "' has the wrong type");
  return *it;
}

[[noreturn]] void card_fail(const std::string& m) { bad_card(m); }
[[noreturn]] void manifest_fail(const std::string& m) { bad_manifest(m); }

std::vector<std::string> string_list(const json& j, const char* key) {
  const auto& arr = require(j, key, json::value_t::array, card_fail);
  std::vector<std::string> out;
  for (const auto& item : arr) {
    if (!item.is_string()) bad_card(std::string("'") + key + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

std::string_view family_name(LicenseFamily family) {
  switch (family) {
    case LicenseFamily::CC: return "CC";
    case LicenseFamily::ODC: return "ODC";
    case LicenseFamily::CDLA: return "CDLA";
  }
  return "CC";
}

std::optional<LicenseFamily> family_from_name(std::string_view name) {
  for (auto f : {LicenseFamily::CC, LicenseFamily::ODC, LicenseFamily::CDLA}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string flags_to_string(unsigned flags) {
  std::string out;
  for (const auto& [flag, name] : kFlagNames) {
    if ((flags & flag) == 0) continue;
    if (!out.empty()) out += '|';
    out += name;
  }
  return out;
}

std::optional<Diagnostic> validate_license(const LicenseSpec& spec) {
  const auto family = std::string(family_name(spec.family));
  if ((spec.flags & ~(BY | SA | NC | ND)) != 0) return license_error("unknown license flag bits");
  if ((spec.flags & SA) != 0 && (spec.flags & ND) != 0) {
    return license_error("SA and ND cannot be combined");
  }
  const Allowed* match = nullptr;
  for (const auto& a : kAllowed) {
    if (a.family == spec.family && a.variant == spec.variant) match = &a;
  }
  if (match == nullptr) {
    return license_error("'" + spec.variant + "' is not a recognised " + family + " variant");
  }
  if (spec.family != LicenseFamily::CC && spec.flags != 0) {
    return license_error(family + " licenses take no condition flags");
  }
  if (match->flags != spec.flags) {
    return license_error(family + " " + spec.variant + " implies flags {" + flags_to_string(match->flags) +
                         "}, got {" + flags_to_string(spec.flags) + "}");
  }
  return std::nullopt;
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' || c == '-';
  });
}

DataCard datacard_from_json(const json& j) {
  if (!j.is_object()) bad_card("data card must be a JSON object");
  DataCard card;
  card.ns = require(j, "namespace", json::value_t::string, card_fail).get<std::string>();
  card.name = require(j, "name", json::value_t::string, card_fail).get<std::string>();
  if (!is_identifier(card.ns)) bad_card("namespace '" + card.ns + "' is not an identifier");
  if (!is_identifier(card.name)) bad_card("name '" + card.name + "' is not an identifier");
  card.readme = require(j, "readme", json::value_t::string, card_fail).get<std::string>();

  const auto& meta = require(j, "metafile", json::value_t::object, card_fail);
  auto& m = card.metafile;
  m.publisher = require(meta, "publisher", json::value_t::string, card_fail).get<std::string>();
  if (const auto it = meta.find("homepage"); it != meta.end() && !it->is_null()) {
    if (!it->is_string()) bad_card("'homepage' must be a string");
    const auto url = it->get<std::string>();
    if (!std::regex_match(url, std::regex(R"(https?://[^\s/]+(/\S*)?)"))) {
      bad_card("homepage '" + url + "' is not an http(s) URL");
    }
    m.homepage = url;
  }
  m.paper_refs = string_list(meta, "paper_refs");
  m.task_types = string_list(meta, "task_types");
  m.data_types = string_list(meta, "data_types");

  const auto& lic = require(meta, "license", json::value_t::object, card_fail);
  const auto family = require(lic, "family", json::value_t::string, card_fail).get<std::string>();
  const auto parsed = family_from_name(family);
  if (!parsed) throw Error(ErrorCode::InvalidLicense, "unknown license family '" + family + "'");
  m.license.family = *parsed;
  m.license.variant = require(lic, "variant", json::value_t::string, card_fail).get<std::string>();
  for (const auto& flag : require(lic, "flags", json::value_t::array, card_fail)) {
    const auto name = flag.is_string() ? flag.get<std::string>() : std::string();
    const auto it = std::find_if(kFlagNames.begin(), kFlagNames.end(),
                                 [&](const auto& p) { return p.second == name; });
    if (it == kFlagNames.end()) throw Error(ErrorCode::InvalidLicense, "unknown license flag '" + name + "'");
    if ((m.license.flags & it->first) != 0) {
      throw Error(ErrorCode::InvalidLicense, "license flag '" + name + "' repeated");
    }
    m.license.flags |= it->first;
  }
  if (auto diag = validate_license(m.license)) throw Error(diag->code, diag->message);
  return card;
}

json to_json(const DataCard& card) {
  json flags = json::array();
  for (const auto& [flag, name] : kFlagNames) {
    if ((card.metafile.license.flags & flag) != 0) flags.push_back(name);
  }
  const auto& m = card.metafile;
  json meta{{"publisher", m.publisher},
            {"paper_refs", m.paper_refs},
            {"task_types", m.task_types},
            {"data_types", m.data_types},
            {"license",
             {{"family", family_name(m.license.family)}, {"variant", m.license.variant}, {"flags", flags}}}};
  if (m.homepage) meta["homepage"] = *m.homepage;
  return json{{"namespace", card.ns}, {"name", card.name}, {"readme", card.readme}, {"metafile", meta}};
}

bool is_manifest_path(std::string_view path) {
  if (path.empty() || path.front() == '/' || path.find('\\') != std::string_view::npos ||
      path.find('\0') != std::string_view::npos) {
    return false;
  }
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    const auto seg = path.substr(start, end - start);
    if (seg.empty() || seg == "." || seg == "..") return false;
    start = end + 1;
  }
  return true;
}

void check_manifest(const FileManifest& manifest) {
  std::set<std::string> seen;
  std::uint64_t total = 0;
  for (const auto& e : manifest.entries) {
    if (!is_manifest_path(e.path)) bad_manifest("path '" + e.path + "' is not root-contained");
    if (!seen.insert(e.path).second) bad_manifest("path '" + e.path + "' listed twice");
    if (!is_sha256_hex(e.sha256)) bad_manifest("entry '" + e.path + "' has a malformed sha256");
    total += e.size;
  }
  if (total != manifest.total_size) {
    bad_manifest("total_size " + std::to_string(manifest.total_size) + " does not match the entries (" +
                 std::to_string(total) + ")");
  }
}

FileManifest manifest_from_json(const json& j) {
  if (!j.is_object()) bad_manifest("manifest must be a JSON object");
  FileManifest out;
  for (const auto& e : require(j, "entries", json::value_t::array, manifest_fail)) {
    if (!e.is_object()) bad_manifest("manifest entries must be objects");
    out.entries.push_back(ManifestEntry{
        require(e, "path", json::value_t::string, manifest_fail).get<std::string>(),
        require(e, "size", json::value_t::number_unsigned, manifest_fail).get<std::uint64_t>(),
        require(e, "sha256", json::value_t::string, manifest_fail).get<std::string>()});
  }
  out.total_size = require(j, "total_size", json::value_t::number_unsigned, manifest_fail).get<std::uint64_t>();
  check_manifest(out);
  return out;
}

json to_json(const FileManifest& manifest) {
  json entries = json::array();
  for (const auto& e : manifest.entries) {
    entries.push_back({{"path", e.path}, {"size", e.size}, {"sha256", e.sha256}});
  }
  return json{{"entries", entries}, {"total_size", manifest.total_size}};
}

FileManifest build_manifest(const fs::path& dir, const std::vector<std::string>& exclude) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::NotFound, dir.string() + " is not a directory");
  FileManifest out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = entry.path().lexically_relative(dir).generic_string();
    if (std::find(exclude.begin(), exclude.end(), rel) != exclude.end()) continue;
    if (!is_manifest_path(rel)) bad_manifest("cannot publish '" + rel + "'");
    out.entries.push_back(ManifestEntry{rel, entry.file_size(), sha256_file(entry.path())});
    out.total_size += out.entries.back().size;
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
  return out;
}

DatasetSummary summary_from_json(const json& j) {
  DatasetSummary s;
  s.ns = j.at("namespace").get<std::string>();
  s.name = j.at("name").get<std::string>();
  s.task_types = j.at("task_types").get<std::vector<std::string>>();
  s.data_types = j.at("data_types").get<std::vector<std::string>>();
  s.license = j.at("license").get<std::string>();
  s.files = j.at("files").get<std::uint64_t>();
  s.total_size = j.at("total_size").get<std::uint64_t>();
  s.updated = j.at("updated").get<std::int64_t>();
  return s;
}

json to_json(const DatasetSummary& s) {
  return json{{"namespace", s.ns},         {"name", s.name},   {"task_types", s.task_types},
              {"data_types", s.data_types}, {"license", s.license}, {"files", s.files},
              {"total_size", s.total_size}, {"updated", s.updated}};
}

}  // namespace odl::registry
