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

#include "generators.hpp"
#include "odl/engine/merge.hpp"

namespace odl::testing {

// Random detection-shaped parts: up to 4 parts of up to 10 samples, each
// with its own domain (up to 8 classes from an overlapping pool) and its
// own domain name.
std::vector<engine::DatasetPtr> random_parts(Rng& rng);

struct OracleResult {
  std::vector<std::string> unified;  // expected unified class list
  std::vector<dsdl::Sample> samples;  // expected merged samples
};

// Brute-force union in part order, then every label index replaced by the
// label name's position in the union.
OracleResult merge_oracle(const std::vector<engine::DatasetPtr>& parts);

// Empty string when `merged` agrees with the oracle, otherwise a
// description of the first disagreement.
std::string check_against_oracle(const engine::MergedSampleSet& merged,
                                 const std::vector<engine::DatasetPtr>& parts);

}  // namespace odl::testing
