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

#include <cstdlib>
#include <iostream>

#include "odl/cli/cli.hpp"

int main(int argc, char** argv) {
  odl::cli::Environment env;
  if (const char* endpoint = std::getenv("ODL_ENDPOINT")) env["ODL_ENDPOINT"] = endpoint;
  return odl::cli::run(std::vector<std::string>(argv + 1, argv + argc), env, std::cout, std::cerr);
}
