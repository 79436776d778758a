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
#include <string>
#include <vector>

#include "odl/engine/dataset.hpp"

namespace odl::engine {

// Per-part relabeling produced by concat.
struct LabelRemap {
  // part domain name -> unified domain name
  std::map<std::string, std::string> domain;
  // part domain name -> (old class index -> unified class index)
  std::map<std::string, std::vector<std::size_t>> index;
};

// Concatenation of datasets with a unified label space. Class names are
// matched exactly; each unified domain lists the first part's classes in
// order, followed by classes first seen in later parts.
class MergedSampleSet final : public Dataset {
 public:
  std::size_t size() const override { return samples_.size(); }
  const dsdl::Sample& at(std::size_t index) const override;
  const std::filesystem::path& root_of(std::size_t index) const override;
  const dsdl::Schema& schema() const override { return schema_; }
  std::string origin() const override;

  const std::vector<DatasetPtr>& parts() const { return parts_; }
  const std::vector<LabelRemap>& remaps() const { return remaps_; }
  // offsets()[k] is the global index of part k's first sample; the final
  // entry equals size().
  const std::vector<std::size_t>& offsets() const { return offsets_; }
  // (part index, local index) for a global index.
  std::pair<std::size_t, std::size_t> locate(std::size_t index) const;

 private:
  friend std::shared_ptr<const MergedSampleSet> concat(const std::vector<DatasetPtr>& parts);

  std::vector<DatasetPtr> parts_;
  dsdl::Schema schema_;
  std::vector<LabelRemap> remaps_;
  std::vector<std::size_t> offsets_;
  std::vector<dsdl::Sample> samples_;
};

// Throws EmptyConcat for an empty list and IncompatibleSchemas (naming the
// first differing field) when sample layouts differ. Label fields may use
// different domains across parts.
std::shared_ptr<const MergedSampleSet> concat(const std::vector<DatasetPtr>& parts);

}  // namespace odl::engine
