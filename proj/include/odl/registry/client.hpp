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
#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "odl/registry/model.hpp"

namespace odl::registry {

enum class SortOrder { Name, Updated };

struct SearchQuery {
  std::optional<std::string> text;  // case-insensitive substring of namespace, name or readme
  std::optional<std::string> task_type;
  std::optional<std::string> data_type;
  SortOrder sort = SortOrder::Name;
};

// All calls throw RemoteError (net::HttpError) on transport failures and
// re-raise the server's error code otherwise.
std::vector<DatasetSummary> search_datasets(const std::string& endpoint, const SearchQuery& query = {});
DataCard fetch_datacard(const std::string& endpoint, const std::string& ns, const std::string& name);
FileManifest fetch_manifest(const std::string& endpoint, const std::string& ns, const std::string& name);

// Uploads every file under `source_dir` except a top-level datacard.json,
// then commits. The server checks each file against the declared manifest.
DatasetSummary create_dataset(const std::string& endpoint, const DataCard& card,
                              const std::filesystem::path& source_dir);

inline constexpr std::uint64_t kChunkSize = 4ull << 20;

struct DownloadProgress {
  std::uint64_t fetched = 0;  // bytes received during this call
  std::uint64_t present = 0;  // bytes on disk, including resumed and skipped files
  std::uint64_t total = 0;
};

struct DownloadOptions {
  unsigned jobs = 1;
  std::uint64_t chunk_size = kChunkSize;
  std::stop_token stop;
  // Invoked from worker threads, serialized.
  std::function<void(const DownloadProgress&)> on_progress;
};

struct DownloadReport {
  std::uint64_t bytes_fetched = 0;
  std::uint64_t files = 0;  // manifest entries present and verified
  bool verified = false;    // every entry verified
  bool interrupted = false;
};

// Mirrors a dataset into `target_dir`. Files at least one chunk long are
// split into ranges shared by up to `jobs` connections. Data lands in
// `<path>.part`; the completed byte ranges of a partial file are kept in
// `<path>.part.segments` so a later call fetches only what is missing. A
// `.part` without that record counts as a valid prefix. Each file is
// hashed before it is renamed into place; files already present with the
// right digest are not fetched again.
//
// A stop request ends transfers early and returns a report with
// `interrupted` set. A digest mismatch throws IntegrityError and leaves the
// `.part` file behind.
DownloadReport download_dataset(const std::string& endpoint, const std::string& ns, const std::string& name,
                                const std::filesystem::path& target_dir, const DownloadOptions& options = {});

// "<ns>___<name>"
std::string default_target_name(const std::string& ns, const std::string& name);

}  // namespace odl::registry
