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

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "odl/core/error.hpp"

namespace odl::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,  // validation or conversion failure
  kIoError = 2,  // filesystem, network or registry failure
  kUsage = 3,
};

// Exit status for an error code raised by the library.
int exit_code_for(ErrorCode code);

using Environment = std::map<std::string, std::string>;

// Runs one `odl` invocation. `args` excludes the program name. Human and
// --json output go to `out`; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, const Environment& env, std::ostream& out, std::ostream& err);

}  // namespace odl::cli
