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
#include <map>
#include <string>

#include "odl/engine/dataset.hpp"

namespace odl::engine {

inline constexpr std::string_view kUnknownResolution = "unknown";

struct DatasetStats {
  std::size_t samples = 0;
  std::size_t media_items = 0;  // Image-typed values across all samples
  std::map<std::string, std::size_t> extension_histogram;
  std::map<std::string, std::size_t> size_histogram;
  std::map<std::string, std::size_t> resolution_histogram;
  std::map<std::string, std::size_t> class_frequency;
  Diagnostics warnings;  // UnknownResolution, one per unreadable header
};

// Size bucket label for a byte count: "<64KiB", "<1MiB", "<16MiB", "≥16MiB".
std::string size_bucket(std::uintmax_t bytes);

// Probes media concurrently; output does not depend on scheduling.
// Unresolvable media throw MediaUnavailable listing every failing locator.
DatasetStats compute_stats(const Dataset& ds, const locator::ResolutionRoots& roots = {});

}  // namespace odl::engine
