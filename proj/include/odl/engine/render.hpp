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

#include <string>

#include "odl/engine/dataset.hpp"

namespace odl::engine {

enum class RenderShape { Classification, Detection, Polygons };

struct RenderOptions {
  bool embed_media = false;
};

// Classifies a schema by the annotation layout its sample record carries.
// Throws UnsupportedForRender when no known layout matches.
RenderShape render_shape(const dsdl::Schema& schema);

// Standalone SVG 1.1 overlay for one sample. Detection objects become a
// rect plus a label text; polygon objects a polygon plus their label or
// transcription; classification a single text badge.
std::string render_sample(const Dataset& ds, std::size_t index, const RenderOptions& options = {},
                          const locator::ResolutionRoots& roots = {});

}  // namespace odl::engine
