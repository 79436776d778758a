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

#include "odl/registry/client.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

#include "odl/core/digest.hpp"
#include "odl/core/files.hpp"
#include "odl/locator/http.hpp"

namespace odl::registry {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string base(std::string endpoint) {
  while (!endpoint.empty() && endpoint.back() == '/') endpoint.pop_back();
  return endpoint;
}

std::string dataset_url(const std::string& endpoint, const std::string& ns, const std::string& name) {
  return base(endpoint) + "/api/v1/datasets/" + net::encode_segment(ns) + "/" + net::encode_segment(name);
}

std::string file_url(const std::string& endpoint, const std::string& ns, const std::string& name,
                     const std::string& path) {
  std::string url = base(endpoint) + "/api/v1/files/" + net::encode_segment(ns) + "/" + net::encode_segment(name);
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string::npos) end = path.size();
    url += "/" + net::encode_segment(path.substr(start, end - start));
    start = end + 1;
  }
  return url;
}

// Turns an error response into the server's code when it sent one.
[[noreturn]] void raise(const net::Response& response, const std::string& what) {
  try {
    const auto body = json::parse(response.body);
    if (body.is_object() && body.contains("error") && body["error"].is_string()) {
      if (const auto code = code_from_name(body["error"].get<std::string>())) {
        throw Error(*code, body.value("message", what));
      }
    }
  } catch (const json::exception&) {
  }
  throw net::HttpError(response.status, what);
}

json checked_json(const net::Response& response, const std::string& what) {
  if (response.status < 200 || response.status >= 300) raise(response, what);
  try {
    return json::parse(response.body);
  } catch (const json::exception& e) {
    throw net::HttpError(response.status, what + ": response is not JSON");
  }
}

// ---- download state ----

struct Interval {
  std::uint64_t begin;
  std::uint64_t end;
};

void add_interval(std::vector<Interval>& set, Interval iv) {
  if (iv.begin >= iv.end) return;
  set.push_back(iv);
  std::sort(set.begin(), set.end(), [](const Interval& a, const Interval& b) { return a.begin < b.begin; });
  std::vector<Interval> merged;
  for (const auto& x : set) {
    if (!merged.empty() && x.begin <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, x.end);
    } else {
      merged.push_back(x);
    }
  }
  set = std::move(merged);
}

std::vector<Interval> missing(const std::vector<Interval>& done, std::uint64_t size) {
  std::vector<Interval> out;
  std::uint64_t cursor = 0;
  for (const auto& iv : done) {
    if (iv.begin > cursor) out.push_back({cursor, iv.begin});
    cursor = std::max(cursor, iv.end);
  }
  if (cursor < size) out.push_back({cursor, size});
  return out;
}

std::uint64_t covered(const std::vector<Interval>& done) {
  std::uint64_t n = 0;
  for (const auto& iv : done) n += iv.end - iv.begin;
  return n;
}

struct FileState {
  ManifestEntry entry;
  fs::path final_path;
  fs::path part_path;
  fs::path segments_path;

  std::mutex mutex;
  int fd = -1;
  std::vector<Interval> done;
  std::size_t open_tasks = 0;
  bool complete = false;
};

struct Task {
  FileState* file;
  Interval range;
  bool whole;  // plain GET without a Range header
};

fs::path with_suffix(const fs::path& p, const char* suffix) {
  auto out = p;
  out += suffix;
  return out;
}

void save_segments(const FileState& f) {
  json done = json::array();
  for (const auto& iv : f.done) done.push_back({iv.begin, iv.end});
  const auto tmp = with_suffix(f.segments_path, ".tmp");
  write_file(tmp, json{{"size", f.entry.size}, {"sha256", f.entry.sha256}, {"done", done}}.dump());
  std::error_code ec;
  fs::rename(tmp, f.segments_path, ec);
  if (ec) throw Error(ErrorCode::WriteError, "cannot record progress for " + f.part_path.string());
}

// Completed ranges of an existing .part, validated against the entry.
std::vector<Interval> load_segments(const FileState& f, std::uint64_t part_size) {
  std::error_code ec;
  if (fs::is_regular_file(f.segments_path, ec)) {
    try {
      const auto j = json::parse(read_file(f.segments_path));
      if (j.at("size").get<std::uint64_t>() == f.entry.size && j.at("sha256").get<std::string>() == f.entry.sha256) {
        std::vector<Interval> done;
        for (const auto& iv : j.at("done")) {
          const auto b = iv.at(0).get<std::uint64_t>();
          const auto e = std::min({iv.at(1).get<std::uint64_t>(), part_size, f.entry.size});
          add_interval(done, {b, e});
        }
        return done;
      }
    } catch (const std::exception&) {
    }
  }
  if (part_size > f.entry.size) return {};
  return part_size == 0 ? std::vector<Interval>{} : std::vector<Interval>{{0, part_size}};
}

void write_at(int fd, const char* data, std::size_t n, std::uint64_t offset, const fs::path& path) {
  while (n > 0) {
    const auto w = ::pwrite(fd, data, n, static_cast<off_t>(offset));
    if (w < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::WriteError, "write to " + path.string() + " failed: " + std::strerror(errno));
    }
    data += w;
    n -= static_cast<std::size_t>(w);
    offset += static_cast<std::uint64_t>(w);
  }
}

class Downloader {
 public:
  Downloader(std::string endpoint, std::string ns, std::string name, const DownloadOptions& options)
      : endpoint_(std::move(endpoint)), ns_(std::move(ns)), name_(std::move(name)), options_(options) {}

  DownloadReport run(const fs::path& target) {
    const auto manifest = fetch_manifest(endpoint_, ns_, name_);
    progress_.total = manifest.total_size;
    std::error_code ec;
    fs::create_directories(target, ec);
    if (ec) throw Error(ErrorCode::WriteError, "cannot create " + target.string() + ": " + ec.message());

    files_.reserve(manifest.entries.size());
    for (const auto& entry : manifest.entries) {
      auto f = std::make_unique<FileState>();
      f->entry = entry;
      f->final_path = target / fs::path(entry.path);
      f->part_path = with_suffix(f->final_path, ".part");
      f->segments_path = with_suffix(f->final_path, ".part.segments");
      plan(*f);
      files_.push_back(std::move(f));
    }

    const auto workers = std::min<std::size_t>(std::max(1u, options_.jobs), tasks_.size());
    {
      std::vector<std::jthread> pool;
      for (std::size_t i = 0; i < workers; ++i) pool.emplace_back([this] { work(); });
    }

    for (auto& f : files_) {
      if (f->fd >= 0) ::close(f->fd);
      f->fd = -1;
    }
    if (error_) std::rethrow_exception(error_);

    DownloadReport report;
    report.bytes_fetched = progress_.fetched;
    report.files = static_cast<std::uint64_t>(
        std::count_if(files_.begin(), files_.end(), [](const auto& f) { return f->complete; }));
    report.interrupted = options_.stop.stop_requested() && report.files < files_.size();
    report.verified = report.files == files_.size();
    return report;
  }

 private:
  void plan(FileState& f) {
    std::error_code ec;
    fs::create_directories(f.final_path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::WriteError, "cannot create " + f.final_path.parent_path().string());

    if (fs::is_regular_file(f.final_path, ec) && fs::file_size(f.final_path, ec) == f.entry.size &&
        sha256_file(f.final_path) == f.entry.sha256) {
      f.complete = true;
      progress_.present += f.entry.size;
      return;
    }

    std::uint64_t part_size = 0;
    const bool have_part = fs::is_regular_file(f.part_path, ec);
    if (have_part) {
      part_size = fs::file_size(f.part_path, ec);
      f.done = load_segments(f, part_size);
    } else {
      fs::remove(f.segments_path, ec);
    }
    if (have_part && covered(f.done) == f.entry.size && part_size >= f.entry.size) {
      if (part_size == f.entry.size && sha256_file(f.part_path) == f.entry.sha256) {
        publish(f);
        progress_.present += f.entry.size;
        return;
      }
      f.done.clear();  // full but wrong: start over
    }
    if (f.done.empty()) part_size = 0;

    f.fd = ::open(f.part_path.c_str(), O_WRONLY | O_CREAT, 0644);
    if (f.fd < 0) throw Error(ErrorCode::WriteError, "cannot open " + f.part_path.string() + ": " + std::strerror(errno));
    if (part_size == 0 && ::ftruncate(f.fd, 0) != 0) {
      throw Error(ErrorCode::WriteError, "cannot truncate " + f.part_path.string());
    }
    progress_.present += covered(f.done);

    if (f.entry.size == 0) {
      publish(f);
      return;
    }
    const auto gaps = missing(f.done, f.entry.size);
    if (f.entry.size < options_.chunk_size && gaps.size() == 1 && gaps[0].begin == 0) {
      tasks_.push_back({&f, gaps[0], true});
      f.open_tasks = 1;
      return;
    }
    for (const auto& gap : gaps) {
      for (auto b = gap.begin; b < gap.end; b += options_.chunk_size) {
        tasks_.push_back({&f, {b, std::min(gap.end, b + options_.chunk_size)}, false});
        ++f.open_tasks;
      }
    }
  }

  // Caller holds f.mutex or is the only user of f.
  void publish(FileState& f) {
    if (f.fd >= 0) {
      ::close(f.fd);
      f.fd = -1;
    }
    std::error_code ec;
    fs::remove(f.segments_path, ec);
    const auto digest = sha256_file(f.part_path);
    if (digest != f.entry.sha256) {
      throw Error(ErrorCode::IntegrityError, f.entry.path + ": sha256 " + digest + " does not match manifest " +
                                                 f.entry.sha256 + "; partial data kept in " + f.part_path.string());
    }
    fs::rename(f.part_path, f.final_path, ec);
    if (ec) throw Error(ErrorCode::WriteError, "cannot move " + f.part_path.string() + " into place: " + ec.message());
    f.complete = true;
  }

  bool cancelled() const { return failed_.load() || options_.stop.stop_requested(); }

  void work() {
    while (true) {
      const auto i = next_.fetch_add(1);
      if (i >= tasks_.size() || cancelled()) return;
      try {
        transfer(tasks_[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex_);
        if (!error_) error_ = std::current_exception();
        failed_ = true;
      }
    }
  }

  void transfer(const Task& task) {
    auto& f = *task.file;
    const auto url = file_url(endpoint_, ns_, name_, f.entry.path);
    net::Headers headers;
    if (!task.whole) {
      headers.emplace_back("Range", "bytes=" + std::to_string(task.range.begin) + "-" + std::to_string(task.range.end - 1));
    }
    const int expected = task.whole ? 200 : 206;
    auto cursor = task.range.begin;
    int bad_status = 0;
    std::exception_ptr write_error;

    const auto outcome = net::get_streaming(
        url, headers,
        [&](int status) {
          if (status != expected) bad_status = status;
          return status == expected;
        },
        [&](const char* data, std::size_t n) {
          const auto room = task.range.end - cursor;
          if (n > room) n = static_cast<std::size_t>(room);
          try {
            write_at(f.fd, data, n, cursor, f.part_path);
          } catch (...) {
            write_error = std::current_exception();
            return false;
          }
          cursor += n;
          report_progress(n);
          return cursor < task.range.end && !cancelled();
        });

    std::unique_lock lock(f.mutex);
    add_interval(f.done, {task.range.begin, cursor});
    if (write_error) std::rethrow_exception(write_error);
    if (bad_status != 0) {
      save_segments(f);
      throw net::HttpError(bad_status, "GET " + url);
    }
    if (cursor < task.range.end) {
      save_segments(f);
      if (cancelled()) return;
      throw net::HttpError(outcome.status, "GET " + url + ": connection closed after " +
                                               std::to_string(cursor - task.range.begin) + " bytes");
    }
    if (--f.open_tasks == 0 && covered(f.done) == f.entry.size) {
      publish(f);
    } else {
      save_segments(f);
    }
  }

  void report_progress(std::uint64_t n) {
    std::lock_guard lock(progress_mutex_);
    progress_.fetched += n;
    progress_.present += n;
    if (options_.on_progress) options_.on_progress(progress_);
  }

  std::string endpoint_;
  std::string ns_;
  std::string name_;
  const DownloadOptions& options_;

  std::vector<std::unique_ptr<FileState>> files_;
  std::vector<Task> tasks_;
  std::atomic<std::size_t> next_{0};
  std::atomic<bool> failed_{false};

  std::mutex progress_mutex_;
  DownloadProgress progress_;

  std::mutex error_mutex_;
  std::exception_ptr error_;
};

}  // namespace

std::vector<DatasetSummary> search_datasets(const std::string& endpoint, const SearchQuery& query) {
  std::string url = base(endpoint) + "/api/v1/datasets?sort=" + (query.sort == SortOrder::Name ? "name" : "updated");
  if (query.text) url += "&q=" + net::encode_query(*query.text);
  if (query.task_type) url += "&task=" + net::encode_query(*query.task_type);
  if (query.data_type) url += "&type=" + net::encode_query(*query.data_type);
  const auto body = checked_json(net::get(url), "GET " + url);
  std::vector<DatasetSummary> out;
  try {
    for (const auto& item : body.at("datasets")) out.push_back(summary_from_json(item));
  } catch (const json::exception& e) {
    throw net::HttpError(200, "GET " + url + ": unexpected listing shape");
  }
  return out;
}

DataCard fetch_datacard(const std::string& endpoint, const std::string& ns, const std::string& name) {
  const auto url = dataset_url(endpoint, ns, name);
  return datacard_from_json(checked_json(net::get(url), "GET " + url));
}

FileManifest fetch_manifest(const std::string& endpoint, const std::string& ns, const std::string& name) {
  const auto url = dataset_url(endpoint, ns, name) + "/manifest";
  return manifest_from_json(checked_json(net::get(url), "GET " + url));
}

DatasetSummary create_dataset(const std::string& endpoint, const DataCard& card, const fs::path& source_dir) {
  if (auto diag = validate_license(card.metafile.license)) throw Error(diag->code, diag->message);
  if (!is_identifier(card.ns) || !is_identifier(card.name)) {
    throw Error(ErrorCode::InvalidDataCard, "'" + card.repo() + "' is not a valid dataset name");
  }
  const auto manifest = build_manifest(source_dir, {std::string(kDataCardFile)});
  const auto url = dataset_url(endpoint, card.ns, card.name);
  checked_json(net::put(url, json{{"datacard", to_json(card)}, {"manifest", to_json(manifest)}}.dump(),
                        "application/json"),
               "PUT " + url);
  for (const auto& e : manifest.entries) {
    const auto target = file_url(endpoint, card.ns, card.name, e.path);
    checked_json(net::put(target, read_file(source_dir / fs::path(e.path)), "application/octet-stream"),
                 "PUT " + target);
  }
  return summary_from_json(checked_json(net::post(url + "/commit", "", "application/json"), "POST " + url + "/commit"));
}

DownloadReport download_dataset(const std::string& endpoint, const std::string& ns, const std::string& name,
                                const fs::path& target_dir, const DownloadOptions& options) {
  if (options.jobs == 0) throw Error(ErrorCode::UsageError, "jobs must be at least 1");
  if (options.chunk_size == 0) throw Error(ErrorCode::UsageError, "chunk size must be positive");
  return Downloader(endpoint, ns, name, options).run(target_dir);
}

std::string default_target_name(const std::string& ns, const std::string& name) { return ns + "___" + name; }

}  // namespace odl::registry
