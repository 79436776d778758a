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

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace odl::locator {

enum class Scheme { Relative, File, Http, Https, Store };

std::string_view scheme_name(Scheme scheme);

// A parsed reference to a media or annotation payload.
//
//   media/000001.jpg                       relative to the dataset root
//   file:///data/voc/000001.jpg            absolute local path
//   http://host:8080/voc/000001.jpg        plain HTTP(S)
//   store://bucket/imgs/000001.jpg         bucket mapped to an HTTP base URL
//
// Any form may carry an integrity suffix `#sha256=<64 lowercase hex>`.
struct ObjectLocator {
  std::string raw;
  Scheme scheme = Scheme::Relative;
  std::string authority;  // host[:port] or bucket; empty for relative/file
  std::string path;       // normalized
  std::optional<std::string> checksum;

  // Canonical string form (normalized path, checksum suffix kept).
  std::string to_string() const;
  // Full URL for http/https locators.
  std::string url() const;
  // Lowercased extension without the dot ("jpg"), empty when none.
  std::string extension() const;

  friend bool operator==(const ObjectLocator&, const ObjectLocator&) = default;
};

// Throws odl::Error with InvalidLocator or UnsupportedScheme.
ObjectLocator parse_locator(std::string_view raw);

struct ResolutionRoots {
  std::filesystem::path local_root;
  std::map<std::string, std::string> store_endpoints;  // bucket -> base URL
  bool http_allowed = true;
};

// Sequential, single-consumer byte source.
class ByteStream {
 public:
  virtual ~ByteStream() = default;
  // Fills up to buffer.size() bytes; returns 0 once the stream is exhausted.
  virtual std::size_t read(std::span<char> buffer) = 0;
  std::string read_all();
};

// Opens the referenced bytes. Never writes to any backend. When the
// locator carries a checksum, a mismatch throws IntegrityError from the
// read call that reaches end of stream.
std::unique_ptr<ByteStream> resolve(const ObjectLocator& loc, const ResolutionRoots& roots);

// Convenience: resolve and read everything.
std::string fetch(const ObjectLocator& loc, const ResolutionRoots& roots);

// Filesystem path for relative and file locators; nullopt otherwise.
std::optional<std::filesystem::path> local_path(const ObjectLocator& loc,
                                                const ResolutionRoots& roots);

}  // namespace odl::locator
