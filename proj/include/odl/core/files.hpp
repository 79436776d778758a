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

#include <filesystem>
#include <string>
#include <string_view>

namespace odl {

// Whole-file helpers. Read failures throw odl::Error(NotFound); write
// failures throw odl::Error(WriteError).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// True when `path` is lexically inside `root` after normalization.
bool is_within(const std::filesystem::path& root, const std::filesystem::path& path);

}  // namespace odl
