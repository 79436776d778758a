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

#include "odl/locator/http.hpp"

#include <httplib.h>

#include <cctype>
#include <cstdio>

namespace odl::net {
namespace {

constexpr time_t kConnectTimeoutSec = 5;
constexpr time_t kReadTimeoutSec = 30;

std::unique_ptr<httplib::Client> make_client(const std::string& origin) {
  auto client = std::make_unique<httplib::Client>(origin);
  if (!client->is_valid()) throw HttpError(0, "invalid endpoint " + origin);
  client->set_connection_timeout(kConnectTimeoutSec, 0);
  client->set_read_timeout(kReadTimeoutSec, 0);
  client->set_write_timeout(kReadTimeoutSec, 0);
  client->set_keep_alive(false);
  return client;
}

httplib::Headers to_httplib(const Headers& headers) {
  httplib::Headers out;
  for (const auto& [k, v] : headers) out.emplace(k, v);
  return out;
}

Response from_result(const httplib::Result& result, std::string_view url) {
  if (!result) {
    throw HttpError(0, "request to " + std::string(url) + " failed: " +
                           httplib::to_string(result.error()));
  }
  Response out;
  out.status = result->status;
  out.body = result->body;
  for (const auto& [k, v] : result->headers) out.headers.emplace_back(k, v);
  return out;
}

bool is_unreserved(unsigned char c) {
  return std::isalnum(c) != 0 || c == '-' || c == '.' || c == '_' || c == '~';
}

std::string percent_encode(std::string_view value, bool keep_slash) {
  std::string out;
  for (char ch : value) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_unreserved(c) || (keep_slash && c == '/')) {
      out.push_back(ch);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

}  // namespace

HttpError::HttpError(int status, const std::string& message)
    : Error(ErrorCode::RemoteError,
            status == 0 ? message : "HTTP " + std::to_string(status) + ": " + message),
      status_(status) {}

SplitUrl split_url(std::string_view url) {
  const auto sep = url.find("://");
  if (sep == std::string_view::npos) throw HttpError(0, "not a URL: " + std::string(url));
  std::string scheme(url.substr(0, sep));
  for (auto& c : scheme) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (scheme != "http" && scheme != "https") {
    throw HttpError(0, "unsupported URL scheme: " + std::string(url));
  }
  const auto path_start = url.find_first_of("/?", sep + 3);
  SplitUrl out;
  if (path_start == std::string_view::npos) {
    out.origin = scheme + "://" + std::string(url.substr(sep + 3));
    out.target = "/";
  } else {
    out.origin = scheme + "://" + std::string(url.substr(sep + 3, path_start - sep - 3));
    out.target = std::string(url.substr(path_start));
    if (out.target.front() == '?') out.target.insert(out.target.begin(), '/');
  }
  return out;
}

std::string encode_segment(std::string_view segment) { return percent_encode(segment, false); }
std::string encode_query(std::string_view value) { return percent_encode(value, false); }

Response get(std::string_view url, const Headers& headers) {
  const auto parts = split_url(url);
  auto client = make_client(parts.origin);
  return from_result(client->Get(parts.target, to_httplib(headers)), url);
}

Response put(std::string_view url, std::string_view body, std::string_view content_type) {
  const auto parts = split_url(url);
  auto client = make_client(parts.origin);
  return from_result(client->Put(parts.target, body.data(), body.size(), std::string(content_type)),
                     url);
}

Response post(std::string_view url, std::string_view body, std::string_view content_type) {
  const auto parts = split_url(url);
  auto client = make_client(parts.origin);
  return from_result(client->Post(parts.target, body.data(), body.size(), std::string(content_type)),
                     url);
}

StreamResult get_streaming(std::string_view url, const Headers& headers,
                           const std::function<bool(int)>& on_status,
                           const std::function<bool(const char*, std::size_t)>& on_data) {
  const auto parts = split_url(url);
  auto client = make_client(parts.origin);
  StreamResult outcome;
  auto result = client->Get(
      parts.target, to_httplib(headers),
      [&](const httplib::Response& response) {
        outcome.status = response.status;
        if (!on_status(response.status)) {
          outcome.cancelled = true;
          return false;
        }
        return true;
      },
      [&](const char* data, std::size_t length) {
        if (!on_data(data, length)) {
          outcome.cancelled = true;
          return false;
        }
        return true;
      });
  if (!result && !outcome.cancelled) {
    throw HttpError(0, "request to " + std::string(url) + " failed: " +
                           httplib::to_string(result.error()));
  }
  if (result) outcome.status = result->status;
  return outcome;
}

}  // namespace odl::net
