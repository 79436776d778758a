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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace odl::registry {

// One handled request, recorded before the response is sent.
struct RequestRecord {
  std::string method;
  std::string path;
  std::string range;  // raw Range header, empty when absent
  // Resolved [begin, end) byte interval for file reads.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> bytes;
  int status = 0;
};

// Serves `<root>/<namespace>/<name>/` directories, each holding a
// datacard.json plus content files, over the JSON wire protocol:
//
//   GET  /api/v1/datasets?q=&task=&type=&sort=name|updated
//   GET  /api/v1/datasets/{ns}/{name}            data card
//   GET  /api/v1/datasets/{ns}/{name}/manifest
//   GET  /api/v1/files/{ns}/{name}/{path}        Range honored
//   PUT  /api/v1/datasets/{ns}/{name}            {"datacard", "manifest"} opens an upload
//   PUT  /api/v1/files/{ns}/{name}/{path}        one declared file, digest-checked
//   POST /api/v1/datasets/{ns}/{name}/commit     publishes a complete upload
//
// Errors are JSON bodies {"error": <code name>, "message": ...}.
class RegistryServer {
 public:
  // Scans `root` and binds. Port 0 picks a free port. Throws StartupError
  // when the root is missing or the address cannot be bound, and the card
  // or manifest codes for malformed datasets.
  static std::unique_ptr<RegistryServer> start(const std::filesystem::path& root,
                                               const std::string& host = "127.0.0.1", int port = 0);
  ~RegistryServer();
  RegistryServer(const RegistryServer&) = delete;
  RegistryServer& operator=(const RegistryServer&) = delete;

  int port() const;
  // http://host:port
  std::string endpoint() const;

  // Graceful shutdown; in-flight requests finish first. Idempotent.
  void stop();
  // Blocks until stop() is called from another thread.
  void wait();

  std::vector<RequestRecord> request_log() const;
  void clear_log();
  // Content bytes written by file reads since start or the last clear_log().
  std::uint64_t bytes_served() const;

 private:
  struct Impl;
  explicit RegistryServer(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace odl::registry
