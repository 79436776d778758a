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

#include "odl/engine/dataset.hpp"

namespace odl::engine {

// A self-contained document for `ds`: every definition reachable from the
// sample type (domains carry their current class lists) and all samples
// inline, media locators unchanged.
dsdl::DsdlDocument to_document(const Dataset& ds);

// Writes `<out_dir>/dsdl/set-<split>/<split>.yaml`. Local media are copied
// under `out_dir` at their original relative path (or `parts/<n>/...` when
// two sources would collide); sources that cannot be copied are referenced
// by absolute file:// locators. Remote locators are kept. Throws
// WriteError on any I/O failure.
std::filesystem::path export_sampleset(const Dataset& ds, const std::filesystem::path& out_dir,
                                       const std::string& split);

}  // namespace odl::engine
