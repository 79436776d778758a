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

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odl/core/error.hpp"

namespace odl::net {

// RemoteError carrying the HTTP status (0 when no response was received).
class HttpError : public Error {
 public:
  HttpError(int status, const std::string& message);
  int status() const noexcept { return status_; }

 private:
  int status_;
};

using Headers = std::vector<std::pair<std::string, std::string>>;

struct Response {
  int status = 0;
  std::string body;
  Headers headers;
};

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string target;  // /path?query
};

// Throws HttpError(0) for URLs that are not http:// or https://.
SplitUrl split_url(std::string_view url);

// Percent-encodes one path segment.
std::string encode_segment(std::string_view segment);
std::string encode_query(std::string_view value);

// Plain request helpers. Transport failures throw HttpError(0); HTTP
// statuses are returned as-is so callers can map them.
Response get(std::string_view url, const Headers& headers = {});
Response put(std::string_view url, std::string_view body, std::string_view content_type);
Response post(std::string_view url, std::string_view body, std::string_view content_type);

struct StreamResult {
  int status = 0;
  bool cancelled = false;  // on_status or on_data returned false
};

// Streaming GET. `on_status` sees the response status before any body
// bytes and may reject it by returning false; `on_data` returns false to
// cancel the transfer. Throws HttpError(0) when the transfer failed for a
// reason other than cancellation.
StreamResult get_streaming(std::string_view url, const Headers& headers,
                  const std::function<bool(int status)>& on_status,
                  const std::function<bool(const char* data, std::size_t length)>& on_data);

}  // namespace odl::net
