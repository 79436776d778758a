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
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "odl/core/error.hpp"
#include "odl/dsdl/dsdl.hpp"
#include "odl/locator/locator.hpp"

namespace odl::engine {

// Read-only, indexable view over typed samples. Implementations are
// immutable after construction and safe for concurrent reads.
class Dataset {
 public:
  virtual ~Dataset() = default;

  virtual std::size_t size() const = 0;
  // Throws IndexOutOfRange when index >= size().
  virtual const dsdl::Sample& at(std::size_t index) const = 0;
  // Directory that relative locators of sample `index` resolve against.
  virtual const std::filesystem::path& root_of(std::size_t index) const = 0;
  virtual const dsdl::Schema& schema() const = 0;
  // "file:<path>", "voc:<dir>", "concat(...)" and so on.
  virtual std::string origin() const = 0;

  bool empty() const { return size() == 0; }
};

using DatasetPtr = std::shared_ptr<const Dataset>;

class SampleSet final : public Dataset {
 public:
  // Samples must already conform to `schema`.
  SampleSet(dsdl::Schema schema, std::vector<dsdl::Sample> samples, std::filesystem::path root,
            std::string origin, Diagnostics warnings = {});

  std::size_t size() const override { return samples_.size(); }
  const dsdl::Sample& at(std::size_t index) const override;
  const std::filesystem::path& root_of(std::size_t) const override { return root_; }
  const dsdl::Schema& schema() const override { return schema_; }
  std::string origin() const override { return origin_; }

  const std::filesystem::path& root() const { return root_; }
  const std::vector<dsdl::Sample>& samples() const { return samples_; }
  const Diagnostics& warnings() const { return warnings_; }

 private:
  dsdl::Schema schema_;
  std::vector<dsdl::Sample> samples_;
  std::filesystem::path root_;
  std::string origin_;
  Diagnostics warnings_;
};

// Dataset root for a document: the parent of the nearest ancestor directory
// named `dsdl`, or the document's own directory when there is none.
std::filesystem::path infer_root(const std::filesystem::path& document_path);

// Parses, resolves imports (the document's directory and `<root>/dsdl`
// are searched after the built-in catalog), validates and type-checks
// every sample. External sample files are fetched through the locator
// layer with `roots.local_root` replaced by the inferred root. Any error
// diagnostic throws odl::Error(ValidationFailed) carrying the full set.
std::shared_ptr<const SampleSet> open_sampleset(const std::filesystem::path& document_path,
                                                const locator::ResolutionRoots& roots = {});

// Roots for resolving media of sample `index`: `base` with its local root
// replaced by the sample's dataset root.
locator::ResolutionRoots roots_for(const Dataset& ds, std::size_t index,
                                   const locator::ResolutionRoots& base);

}  // namespace odl::engine
