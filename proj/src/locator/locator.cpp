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

#include "odl/locator/locator.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <vector>

#include "odl/core/digest.hpp"
#include "odl/core/error.hpp"
#include "odl/locator/http.hpp"

namespace odl::locator {
namespace {

constexpr std::string_view kChecksumMarker = "#sha256=";

[[noreturn]] void invalid(std::string_view raw, const std::string& why) {
  throw Error(ErrorCode::InvalidLocator, "'" + std::string(raw) + "': " + why);
}

bool is_scheme_token(std::string_view s) {
  if (s.empty() || std::isalpha(static_cast<unsigned char>(s.front())) == 0) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '+' || c == '.' || c == '-';
  });
}

// Splits on '/', drops empty and '.' segments, applies '..'. Returns
// nullopt if '..' would climb above the start.
std::optional<std::vector<std::string>> normalize_segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    const auto seg = path.substr(start, end - start);
    if (seg == "..") {
      if (out.empty()) return std::nullopt;
      out.pop_back();
    } else if (!seg.empty() && seg != ".") {
      out.emplace_back(seg);
    }
    start = end + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& segs) {
  std::string out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (i > 0) out.push_back('/');
    out += segs[i];
  }
  return out;
}

class FileStream final : public ByteStream {
 public:
  explicit FileStream(const std::filesystem::path& path) : in_(path, std::ios::binary) {
    if (!in_) throw Error(ErrorCode::NotFound, "cannot open " + path.string());
  }
  std::size_t read(std::span<char> buffer) override {
    in_.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    return static_cast<std::size_t>(in_.gcount());
  }

 private:
  std::ifstream in_;
};

class MemoryStream final : public ByteStream {
 public:
  explicit MemoryStream(std::string data) : data_(std::move(data)) {}
  std::size_t read(std::span<char> buffer) override {
    const auto n = std::min(buffer.size(), data_.size() - pos_);
    std::copy_n(data_.data() + pos_, n, buffer.data());
    pos_ += n;
    return n;
  }

 private:
  std::string data_;
  std::size_t pos_ = 0;
};

class VerifyingStream final : public ByteStream {
 public:
  VerifyingStream(std::unique_ptr<ByteStream> inner, std::string expected, std::string name)
      : inner_(std::move(inner)), expected_(std::move(expected)), name_(std::move(name)) {}

  std::size_t read(std::span<char> buffer) override {
    const auto n = inner_->read(buffer);
    if (n > 0) {
      hasher_.update(std::string_view(buffer.data(), n));
    } else if (!checked_) {
      checked_ = true;
      const auto actual = hasher_.hex_digest();
      if (actual != expected_) {
        throw Error(ErrorCode::IntegrityError,
                    name_ + ": sha256 " + actual + " does not match expected " + expected_);
      }
    }
    return n;
  }

 private:
  std::unique_ptr<ByteStream> inner_;
  std::string expected_;
  std::string name_;
  Sha256 hasher_;
  bool checked_ = false;
};

std::string http_body(const std::string& url) {
  auto response = net::get(url);
  if (response.status < 200 || response.status >= 300) {
    throw net::HttpError(response.status, "GET " + url);
  }
  return std::move(response.body);
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Relative: return "relative";
    case Scheme::File: return "file";
    case Scheme::Http: return "http";
    case Scheme::Https: return "https";
    case Scheme::Store: return "store";
  }
  return "relative";
}

ObjectLocator parse_locator(std::string_view raw) {
  if (raw.empty()) invalid(raw, "empty locator");
  if (raw.find('\0') != std::string_view::npos) invalid(raw, "embedded NUL byte");

  ObjectLocator loc;
  loc.raw = std::string(raw);
  std::string_view body = raw;
  if (const auto mark = raw.rfind(kChecksumMarker); mark != std::string_view::npos) {
    const auto digest = raw.substr(mark + kChecksumMarker.size());
    if (!is_sha256_hex(digest)) invalid(raw, "checksum must be 64 lowercase hex characters");
    loc.checksum = std::string(digest);
    body = raw.substr(0, mark);
    if (body.empty()) invalid(raw, "empty locator");
  }

  const auto sep = body.find("://");
  if (sep == std::string_view::npos) {
    if (body.front() == '/') invalid(raw, "absolute paths need the file:// scheme");
    auto segs = normalize_segments(body);
    if (!segs) invalid(raw, "path escapes its root");
    if (segs->empty()) invalid(raw, "path is empty after normalization");
    loc.scheme = Scheme::Relative;
    loc.path = join(*segs);
    return loc;
  }

  const auto scheme_text = body.substr(0, sep);
  if (!is_scheme_token(scheme_text)) invalid(raw, "relative locators cannot contain '://'");
  std::string scheme(scheme_text);
  std::transform(scheme.begin(), scheme.end(), scheme.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto rest = body.substr(sep + 3);

  if (scheme == "file") {
    const auto slash = rest.find('/');
    const auto host = rest.substr(0, slash == std::string_view::npos ? rest.size() : slash);
    if (!host.empty() && host != "localhost") invalid(raw, "file locators cannot name a remote host");
    if (slash == std::string_view::npos) invalid(raw, "file locator has no path");
    auto segs = normalize_segments(rest.substr(slash));
    if (!segs) invalid(raw, "path escapes the filesystem root");
    if (segs->empty()) invalid(raw, "file locator has no path");
    loc.scheme = Scheme::File;
    loc.path = "/" + join(*segs);
    return loc;
  }

  if (scheme == "http" || scheme == "https") {
    const auto path_start = rest.find_first_of("/?");
    const auto authority = rest.substr(0, path_start == std::string_view::npos ? rest.size() : path_start);
    if (authority.empty()) invalid(raw, "missing host");
    std::string_view path_and_query =
        path_start == std::string_view::npos ? std::string_view{} : rest.substr(path_start);
    std::string_view query;
    if (const auto q = path_and_query.find('?'); q != std::string_view::npos) {
      query = path_and_query.substr(q);
      path_and_query = path_and_query.substr(0, q);
    }
    auto segs = normalize_segments(path_and_query);
    if (!segs) invalid(raw, "path escapes the server root");
    loc.scheme = scheme == "http" ? Scheme::Http : Scheme::Https;
    loc.authority = std::string(authority);
    loc.path = "/" + join(*segs) + std::string(query);
    return loc;
  }

  if (scheme == "store") {
    const auto slash = rest.find('/');
    if (slash == 0 || rest.empty()) invalid(raw, "missing bucket");
    if (slash == std::string_view::npos) invalid(raw, "missing object key");
    auto segs = normalize_segments(rest.substr(slash + 1));
    if (!segs) invalid(raw, "key escapes its bucket");
    if (segs->empty()) invalid(raw, "missing object key");
    loc.scheme = Scheme::Store;
    loc.authority = std::string(rest.substr(0, slash));
    loc.path = join(*segs);
    return loc;
  }

  throw Error(ErrorCode::UnsupportedScheme,
              "'" + std::string(raw) + "': scheme '" + scheme + "' is not supported");
}

std::string ObjectLocator::to_string() const {
  std::string out;
  switch (scheme) {
    case Scheme::Relative: out = path; break;
    case Scheme::File: out = "file://" + path; break;
    case Scheme::Http:
    case Scheme::Https: out = url(); break;
    case Scheme::Store: out = "store://" + authority + "/" + path; break;
  }
  if (checksum) out += std::string(kChecksumMarker) + *checksum;
  return out;
}

std::string ObjectLocator::url() const {
  return std::string(scheme_name(scheme)) + "://" + authority + path;
}

std::string ObjectLocator::extension() const {
  std::string_view p = path;
  if (const auto q = p.find('?'); q != std::string_view::npos) p = p.substr(0, q);
  const auto slash = p.rfind('/');
  const auto name = slash == std::string_view::npos ? p : p.substr(slash + 1);
  const auto dot = name.rfind('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == name.size()) return {};
  std::string ext(name.substr(dot + 1));
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::string ByteStream::read_all() {
  std::string out;
  std::vector<char> buffer(1 << 16);
  while (true) {
    const auto n = read(buffer);
    if (n == 0) break;
    out.append(buffer.data(), n);
  }
  return out;
}

std::optional<std::filesystem::path> local_path(const ObjectLocator& loc,
                                                const ResolutionRoots& roots) {
  if (loc.scheme == Scheme::Relative) return roots.local_root / std::filesystem::path(loc.path);
  if (loc.scheme == Scheme::File) return std::filesystem::path(loc.path);
  return std::nullopt;
}

std::unique_ptr<ByteStream> resolve(const ObjectLocator& loc, const ResolutionRoots& roots) {
  std::unique_ptr<ByteStream> stream;
  switch (loc.scheme) {
    case Scheme::Relative:
    case Scheme::File: {
      if (loc.scheme == Scheme::Relative) {
        std::error_code ec;
        if (!std::filesystem::is_directory(roots.local_root, ec)) {
          throw Error(ErrorCode::NotFound,
                      "local root " + roots.local_root.string() + " is not a directory");
        }
      }
      const auto path = *local_path(loc, roots);
      std::error_code ec;
      if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(ErrorCode::NotFound, loc.raw + ": no such file " + path.string());
      }
      stream = std::make_unique<FileStream>(path);
      break;
    }
    case Scheme::Http:
    case Scheme::Https:
      if (!roots.http_allowed) {
        throw Error(ErrorCode::RemoteDisabled, loc.raw + ": HTTP resolution is disabled");
      }
      stream = std::make_unique<MemoryStream>(http_body(loc.url()));
      break;
    case Scheme::Store: {
      auto it = roots.store_endpoints.find(loc.authority);
      if (it == roots.store_endpoints.end()) {
        throw Error(ErrorCode::UnknownBucket, loc.raw + ": bucket '" + loc.authority +
                                                  "' has no configured endpoint");
      }
      std::string base = it->second;
      while (!base.empty() && base.back() == '/') base.pop_back();
      std::string url = base;
      const auto segs = normalize_segments(loc.path);
      for (const auto& seg : *segs) url += "/" + net::encode_segment(seg);
      stream = std::make_unique<MemoryStream>(http_body(url));
      break;
    }
  }
  if (loc.checksum) {
    stream = std::make_unique<VerifyingStream>(std::move(stream), *loc.checksum, loc.raw);
  }
  return stream;
}

std::string fetch(const ObjectLocator& loc, const ResolutionRoots& roots) {
  return resolve(loc, roots)->read_all();
}

}  // namespace odl::locator
