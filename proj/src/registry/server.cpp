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

#include "odl/registry/server.hpp"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <thread>

#include "odl/core/digest.hpp"
#include "odl/core/files.hpp"
#include "odl/registry/model.hpp"

namespace odl::registry {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kStagingDir = ".staging";

struct Entry {
  DataCard card;
  FileManifest manifest;
  fs::path dir;
  std::int64_t updated = 0;
};

struct Upload {
  DataCard card;
  FileManifest manifest;
  fs::path staging;
  std::set<std::string> received;
};

std::int64_t mtime_seconds(const fs::path& path) {
  const auto sys = std::chrono::file_clock::to_sys(fs::last_write_time(path));
  return std::chrono::duration_cast<std::chrono::seconds>(sys.time_since_epoch()).count();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool contains_ci(const std::string& haystack, const std::string& needle) {
  return lower(haystack).find(lower(needle)) != std::string::npos;
}

bool any_equal_ci(const std::vector<std::string>& values, const std::string& wanted) {
  return std::any_of(values.begin(), values.end(), [&](const std::string& v) { return lower(v) == lower(wanted); });
}

DatasetSummary summarize(const Entry& e) {
  const auto& lic = e.card.metafile.license;
  return DatasetSummary{e.card.ns,
                        e.card.name,
                        e.card.metafile.task_types,
                        e.card.metafile.data_types,
                        std::string(family_name(lic.family)) + " " + lic.variant,
                        e.manifest.entries.size(),
                        e.manifest.total_size,
                        e.updated};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DatasetNotFound:
    case ErrorCode::NotFound: return 404;
    case ErrorCode::DatasetExists: return 409;
    case ErrorCode::IntegrityError: return 422;
    case ErrorCode::WriteError: return 500;
    default: return 400;
  }
}

}  // namespace

struct RegistryServer::Impl {
  fs::path root;
  std::string host;
  int port = 0;
  httplib::Server server;
  std::thread thread;
  std::once_flag stopped;
  std::promise<void> finished;
  std::shared_future<void> done = finished.get_future().share();

  mutable std::shared_mutex index_mutex;
  std::map<std::string, Entry> index;  // "ns/name" -> entry

  std::mutex upload_mutex;
  std::map<std::string, Upload> uploads;

  mutable std::mutex log_mutex;
  std::vector<RequestRecord> log;
  std::atomic<std::uint64_t> served{0};

  void record(const httplib::Request& req, int status,
              std::optional<std::pair<std::uint64_t, std::uint64_t>> bytes = std::nullopt) {
    std::lock_guard lock(log_mutex);
    log.push_back(RequestRecord{req.method, req.path, req.get_header_value("Range"), bytes, status});
  }

  void reply_error(const httplib::Request& req, httplib::Response& res, ErrorCode code, const std::string& message) {
    res.status = status_for(code);
    res.set_content(json{{"error", code_name(code)}, {"message", message}}.dump(), "application/json");
    record(req, res.status);
  }

  void reply_json(const httplib::Request& req, httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
    record(req, status);
  }

  std::optional<Entry> find(const std::string& ns, const std::string& name) const {
    std::shared_lock lock(index_mutex);
    const auto it = index.find(ns + "/" + name);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  void scan() {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw Error(ErrorCode::StartupError, root.string() + " is not a directory");
    for (const auto& ns_dir : fs::directory_iterator(root)) {
      const auto ns = ns_dir.path().filename().string();
      if (!ns_dir.is_directory() || ns.front() == '.') continue;
      for (const auto& ds_dir : fs::directory_iterator(ns_dir.path())) {
        if (!ds_dir.is_directory()) continue;
        const auto card_path = ds_dir.path() / std::string(kDataCardFile);
        if (!fs::is_regular_file(card_path, ec)) continue;
        json j;
        try {
          j = json::parse(read_file(card_path));
        } catch (const json::exception& e) {
          throw Error(ErrorCode::InvalidDataCard, card_path.string() + ": " + e.what());
        }
        Entry entry{datacard_from_json(j), {}, ds_dir.path(), mtime_seconds(card_path)};
        if (entry.card.ns != ns || entry.card.name != ds_dir.path().filename().string()) {
          throw Error(ErrorCode::InvalidDataCard,
                      card_path.string() + ": card names " + entry.card.repo() + " but lives elsewhere");
        }
        entry.manifest = build_manifest(ds_dir.path(), {std::string(kDataCardFile)});
        index.emplace(entry.card.repo(), std::move(entry));
      }
    }
  }

  void list(const httplib::Request& req, httplib::Response& res) {
    const auto q = req.get_param_value("q");
    const auto task = req.get_param_value("task");
    const auto type = req.get_param_value("type");
    const auto sort = req.has_param("sort") ? req.get_param_value("sort") : "name";
    if (sort != "name" && sort != "updated") {
      return reply_error(req, res, ErrorCode::UsageError, "sort must be 'name' or 'updated'");
    }
    std::vector<DatasetSummary> out;
    {
      std::shared_lock lock(index_mutex);
      for (const auto& [key, e] : index) {
        if (!q.empty() && !contains_ci(e.card.ns, q) && !contains_ci(e.card.name, q) &&
            !contains_ci(e.card.readme, q)) {
          continue;
        }
        if (!task.empty() && !any_equal_ci(e.card.metafile.task_types, task)) continue;
        if (!type.empty() && !any_equal_ci(e.card.metafile.data_types, type)) continue;
        out.push_back(summarize(e));
      }
    }
    // Index order is by "ns/name"; name sort compares the dataset name first.
    std::stable_sort(out.begin(), out.end(), [](const DatasetSummary& a, const DatasetSummary& b) {
      return std::tie(a.name, a.ns) < std::tie(b.name, b.ns);
    });
    if (sort == "updated") {
      std::stable_sort(out.begin(), out.end(),
                       [](const DatasetSummary& a, const DatasetSummary& b) { return a.updated > b.updated; });
    }
    json arr = json::array();
    for (const auto& s : out) arr.push_back(to_json(s));
    reply_json(req, res, json{{"datasets", arr}});
  }

  void card(const httplib::Request& req, httplib::Response& res) {
    const auto e = find(req.matches[1], req.matches[2]);
    if (!e) return reply_error(req, res, ErrorCode::DatasetNotFound, "no dataset " + std::string(req.matches[1]) + "/" + std::string(req.matches[2]));
    reply_json(req, res, to_json(e->card));
  }

  void manifest(const httplib::Request& req, httplib::Response& res) {
    const auto e = find(req.matches[1], req.matches[2]);
    if (!e) return reply_error(req, res, ErrorCode::DatasetNotFound, "no dataset " + std::string(req.matches[1]) + "/" + std::string(req.matches[2]));
    reply_json(req, res, to_json(e->manifest));
  }

  void file(const httplib::Request& req, httplib::Response& res) {
    const auto e = find(req.matches[1], req.matches[2]);
    if (!e) return reply_error(req, res, ErrorCode::DatasetNotFound, "no dataset " + std::string(req.matches[1]) + "/" + std::string(req.matches[2]));
    const std::string path = req.matches[3];
    const auto it = std::find_if(e->manifest.entries.begin(), e->manifest.entries.end(),
                                 [&](const ManifestEntry& m) { return m.path == path; });
    if (it == e->manifest.entries.end()) {
      return reply_error(req, res, ErrorCode::NotFound, e->card.repo() + " has no file '" + path + "'");
    }
    const auto size = it->size;
    std::pair<std::uint64_t, std::uint64_t> span{0, size};
    if (req.ranges.size() == 1) {
      const auto [first, last] = req.ranges[0];
      const auto n = static_cast<std::int64_t>(size);
      std::int64_t b = first;
      std::int64_t end = last == -1 ? n : last + 1;
      if (first == -1) {
        b = n - last;
        end = n;
      }
      if (b < 0 || b >= end || end > n) {
        res.status = 416;
        res.set_header("Content-Range", "bytes */" + std::to_string(size));
        record(req, 416);
        return;
      }
      span = {static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(end)};
    } else if (req.ranges.size() > 1) {
      return reply_error(req, res, ErrorCode::UsageError, "multiple ranges are not supported");
    }
    const auto full = e->dir / fs::path(path);
    record(req, req.ranges.empty() ? 200 : 206, span);
    if (size == 0) {
      res.set_content("", "application/octet-stream");
      return;
    }
    auto in = std::make_shared<std::ifstream>(full, std::ios::binary);
    res.set_content_provider(size, "application/octet-stream",
                             [this, in](std::size_t offset, std::size_t length, httplib::DataSink& sink) {
                               std::vector<char> buf(std::min<std::size_t>(length, 1 << 16));
                               in->clear();
                               in->seekg(static_cast<std::streamoff>(offset));
                               in->read(buf.data(), static_cast<std::streamsize>(buf.size()));
                               const auto got = static_cast<std::size_t>(in->gcount());
                               if (got == 0) return false;
                               if (!sink.write(buf.data(), got)) return false;
                               served += got;
                               return true;
                             });
  }

  void open_upload(const httplib::Request& req, httplib::Response& res) {
    const std::string ns = req.matches[1];
    const std::string name = req.matches[2];
    Upload up;
    try {
      const auto body = json::parse(req.body);
      if (!body.is_object() || !body.contains("datacard") || !body.contains("manifest")) {
        return reply_error(req, res, ErrorCode::InvalidManifest, "body needs 'datacard' and 'manifest'");
      }
      up.card = datacard_from_json(body["datacard"]);
      up.manifest = manifest_from_json(body["manifest"]);
    } catch (const json::exception& e) {
      return reply_error(req, res, ErrorCode::InvalidDataCard, std::string("malformed JSON: ") + e.what());
    } catch (const Error& e) {
      return reply_error(req, res, e.code(), e.what());
    }
    if (up.card.ns != ns || up.card.name != name) {
      return reply_error(req, res, ErrorCode::InvalidDataCard, "card names " + up.card.repo() + ", URL names " + ns + "/" + name);
    }
    if (find(ns, name)) return reply_error(req, res, ErrorCode::DatasetExists, ns + "/" + name + " is already published");
    up.staging = root / kStagingDir / ns / name;
    std::error_code ec;
    fs::remove_all(up.staging, ec);
    fs::create_directories(up.staging, ec);
    if (ec) return reply_error(req, res, ErrorCode::WriteError, "cannot stage upload: " + ec.message());
    {
      std::lock_guard lock(upload_mutex);
      uploads[ns + "/" + name] = std::move(up);
    }
    reply_json(req, res, json{{"status", "open"}}, 201);
  }

  void put_file(const httplib::Request& req, httplib::Response& res) {
    const std::string key = std::string(req.matches[1]) + "/" + std::string(req.matches[2]);
    const std::string path = req.matches[3];
    std::lock_guard lock(upload_mutex);
    const auto it = uploads.find(key);
    if (it == uploads.end()) return reply_error(req, res, ErrorCode::DatasetNotFound, "no open upload for " + key);
    auto& up = it->second;
    const auto entry = std::find_if(up.manifest.entries.begin(), up.manifest.entries.end(),
                                    [&](const ManifestEntry& m) { return m.path == path; });
    if (entry == up.manifest.entries.end()) {
      return reply_error(req, res, ErrorCode::InvalidManifest, "'" + path + "' is not in the declared manifest");
    }
    if (req.body.size() != entry->size || sha256_hex(req.body) != entry->sha256) {
      return reply_error(req, res, ErrorCode::IntegrityError, "'" + path + "' does not match its manifest entry");
    }
    try {
      write_file(up.staging / fs::path(path), req.body);
    } catch (const Error& e) {
      return reply_error(req, res, e.code(), e.what());
    }
    up.received.insert(path);
    reply_json(req, res, json{{"status", "stored"}}, 201);
  }

  void commit(const httplib::Request& req, httplib::Response& res) {
    const std::string ns = req.matches[1];
    const std::string name = req.matches[2];
    std::lock_guard lock(upload_mutex);
    const auto it = uploads.find(ns + "/" + name);
    if (it == uploads.end()) return reply_error(req, res, ErrorCode::DatasetNotFound, "no open upload for " + ns + "/" + name);
    auto& up = it->second;
    for (const auto& e : up.manifest.entries) {
      if (up.received.count(e.path) == 0) {
        return reply_error(req, res, ErrorCode::InvalidManifest, "'" + e.path + "' has not been uploaded");
      }
    }
    const auto target = root / ns / name;
    std::error_code ec;
    try {
      write_file(up.staging / std::string(kDataCardFile), to_json(up.card).dump(2));
    } catch (const Error& e) {
      return reply_error(req, res, e.code(), e.what());
    }
    {
      std::unique_lock index_lock(index_mutex);
      if (index.count(ns + "/" + name) != 0 || fs::exists(target, ec)) {
        return reply_error(req, res, ErrorCode::DatasetExists, ns + "/" + name + " is already published");
      }
      fs::create_directories(target.parent_path(), ec);
      if (!ec) fs::rename(up.staging, target, ec);
      if (ec) return reply_error(req, res, ErrorCode::WriteError, "cannot publish: " + ec.message());
      Entry entry{up.card, up.manifest, target, mtime_seconds(target / std::string(kDataCardFile))};
      index.emplace(ns + "/" + name, std::move(entry));
    }
    const auto summary = summarize(*find(ns, name));
    uploads.erase(it);
    reply_json(req, res, to_json(summary));
  }

  void routes() {
    server.Get("/api/v1/datasets", [this](const auto& req, auto& res) { list(req, res); });
    server.Get("/api/v1/datasets/([^/]+)/([^/]+)", [this](const auto& req, auto& res) { card(req, res); });
    server.Get("/api/v1/datasets/([^/]+)/([^/]+)/manifest",
               [this](const auto& req, auto& res) { manifest(req, res); });
    server.Get("/api/v1/files/([^/]+)/([^/]+)/(.+)", [this](const auto& req, auto& res) { file(req, res); });
    server.Put("/api/v1/datasets/([^/]+)/([^/]+)", [this](const auto& req, auto& res) { open_upload(req, res); });
    server.Put("/api/v1/files/([^/]+)/([^/]+)/(.+)", [this](const auto& req, auto& res) { put_file(req, res); });
    server.Post("/api/v1/datasets/([^/]+)/([^/]+)/commit",
                [this](const auto& req, auto& res) { commit(req, res); });
    server.set_error_handler([this](const httplib::Request& req, httplib::Response& res) {
      if (res.status == 404 && res.body.empty()) {
        res.set_content(json{{"error", code_name(ErrorCode::NotFound)}, {"message", "no route for " + req.path}}.dump(),
                        "application/json");
        record(req, 404);
      }
    });
  }
};

RegistryServer::RegistryServer(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}

RegistryServer::~RegistryServer() { stop(); }

std::unique_ptr<RegistryServer> RegistryServer::start(const fs::path& root, const std::string& host, int port) {
  auto impl = std::make_unique<Impl>();
  impl->root = fs::absolute(root).lexically_normal();
  impl->host = host;
  impl->scan();
  impl->routes();
  // No SO_REUSEPORT: a second server on the same port must fail to start.
  impl->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  if (port == 0) {
    impl->port = impl->server.bind_to_any_port(host);
    if (impl->port < 0) throw Error(ErrorCode::StartupError, "cannot bind " + host);
  } else {
    if (!impl->server.bind_to_port(host, port)) {
      throw Error(ErrorCode::StartupError, "cannot bind " + host + ":" + std::to_string(port));
    }
    impl->port = port;
  }
  auto* raw = impl.get();
  impl->thread = std::thread([raw] {
    raw->server.listen_after_bind();
    raw->finished.set_value();
  });
  impl->server.wait_until_ready();
  return std::unique_ptr<RegistryServer>(new RegistryServer(std::move(impl)));
}

int RegistryServer::port() const { return impl_->port; }

std::string RegistryServer::endpoint() const { return "http://" + impl_->host + ":" + std::to_string(impl_->port); }

void RegistryServer::stop() {
  std::call_once(impl_->stopped, [this] {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
  });
}

void RegistryServer::wait() { impl_->done.wait(); }

std::vector<RequestRecord> RegistryServer::request_log() const {
  std::lock_guard lock(impl_->log_mutex);
  return impl_->log;
}

void RegistryServer::clear_log() {
  std::lock_guard lock(impl_->log_mutex);
  impl_->log.clear();
  impl_->served = 0;
}

std::uint64_t RegistryServer::bytes_served() const { return impl_->served.load(); }

}  // namespace odl::registry
