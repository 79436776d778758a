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
#include <vector>

#include "odl/dsdl/dsdl.hpp"
#include "odl/engine/dataset.hpp"

namespace odl::convert::detail {

[[noreturn]] void conversion_error(const std::string& where, const std::string& what);

// Object-detection template schema over a ClassDom domain with `classes`.
dsdl::Schema detection_schema(const std::vector<std::string>& classes);

// Type-checks converter output; a failure here is a converter bug surfaced
// as ConversionError.
dsdl::Sample checked_sample(const yaml::Node& raw, const dsdl::Schema& schema, const std::string& where);

yaml::Node bbox_node(double x, double y, double w, double h);

}  // namespace odl::convert::detail
