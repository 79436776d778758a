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

#include "odl/engine/dataset.hpp"

#include "odl/core/files.hpp"

namespace odl::engine {

namespace fs = std::filesystem;

SampleSet::SampleSet(dsdl::Schema schema, std::vector<dsdl::Sample> samples, fs::path root,
                     std::string origin, Diagnostics warnings)
    : schema_(std::move(schema)),
      samples_(std::move(samples)),
      root_(std::move(root)),
      origin_(std::move(origin)),
      warnings_(std::move(warnings)) {}

const dsdl::Sample& SampleSet::at(std::size_t index) const {
  if (index >= samples_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(index) +
                                                " is out of range for a dataset of length " +
                                                std::to_string(samples_.size()));
  }
  return samples_[index];
}

fs::path infer_root(const fs::path& document_path) {
  const auto absolute = fs::absolute(document_path).lexically_normal();
  for (auto dir = absolute.parent_path(); dir.has_relative_path(); dir = dir.parent_path()) {
    if (dir.filename() == "dsdl") return dir.parent_path();
  }
  return absolute.parent_path();
}

locator::ResolutionRoots roots_for(const Dataset& ds, std::size_t index,
                                   const locator::ResolutionRoots& base) {
  auto roots = base;
  roots.local_root = ds.root_of(index);
  return roots;
}

namespace {

[[noreturn]] void fail(const fs::path& path, Diagnostics diags) {
  sort_by_location(diags);
  throw Error(ErrorCode::ValidationFailed, path.string() + " is not a valid dataset description",
              std::move(diags));
}

std::vector<yaml::Node> load_external_samples(const std::string& raw_locator,
                                              const locator::ResolutionRoots& roots,
                                              Diagnostics& diags) {
  const auto loc = locator::parse_locator(raw_locator);
  const auto text = locator::fetch(loc, roots);
  auto parsed = yaml::parse(text, raw_locator);
  diags.insert(diags.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  if (has_errors(parsed.diagnostics) || !parsed.root) return {};

  const yaml::Node* list = &*parsed.root;
  if (parsed.root->is_mapping()) list = parsed.root->find("samples");
  if (list == nullptr || list->is_null()) return {};
  if (!list->is_sequence()) {
    diags.push_back(Diagnostic::error(ErrorCode::TypeMismatch,
                                      "samples file must hold a sequence of samples",
                                      Location{raw_locator, list->mark.line, list->mark.column}));
    return {};
  }
  return *list->as_sequence();
}

}  // namespace

std::shared_ptr<const SampleSet> open_sampleset(const fs::path& document_path,
                                                const locator::ResolutionRoots& roots) {
  const auto text = read_file(document_path);
  const auto source = document_path.string();
  auto parsed = dsdl::parse_document(text, source);
  Diagnostics warnings;
  for (const auto& d : parsed.diagnostics) {
    if (!d.is_error()) warnings.push_back(d);
  }
  if (!parsed.ok()) fail(document_path, parsed.diagnostics);

  const auto root = infer_root(document_path);
  const std::vector<fs::path> search{fs::absolute(document_path).parent_path(), root / "dsdl"};
  auto resolved = dsdl::resolve_imports(*parsed.document, search);
  if (!resolved.ok()) fail(document_path, resolved.diagnostics);
  const auto& doc = *resolved.document;

  auto diags = dsdl::validate(doc);
  if (has_errors(diags)) fail(document_path, diags);
  if (!doc.data) {
    fail(document_path, {Diagnostic::error(ErrorCode::MissingSampleType,
                                           "document has no data section", Location{source, 1, 1})});
  }

  auto schema = *dsdl::schema_of(doc);
  auto local = roots;
  local.local_root = root;

  std::vector<yaml::Node> external;
  const std::vector<yaml::Node>* raw = std::get_if<std::vector<yaml::Node>>(&doc.data->samples);
  std::string sample_source = source;
  if (raw == nullptr) {
    sample_source = std::get<std::string>(doc.data->samples);
    Diagnostics load_diags;
    external = load_external_samples(sample_source, local, load_diags);
    if (has_errors(load_diags)) fail(document_path, load_diags);
    raw = &external;
  }

  std::vector<dsdl::Sample> samples;
  samples.reserve(raw->size());
  Diagnostics sample_diags;
  for (std::size_t i = 0; i < raw->size(); ++i) {
    auto checked = dsdl::typecheck_sample((*raw)[i], schema.sample_record(), schema.defs,
                                          "samples[" + std::to_string(i) + "]", sample_source);
    sample_diags.insert(sample_diags.end(), checked.diagnostics.begin(), checked.diagnostics.end());
    if (checked.sample) samples.push_back(std::move(*checked.sample));
  }
  if (has_errors(sample_diags)) fail(document_path, sample_diags);

  if (samples.empty()) {
    warnings.push_back(Diagnostic::warning(ErrorCode::EmptyDataset, "dataset has no samples",
                                           Location{source, doc.data->mark.line, doc.data->mark.column}));
  }
  return std::make_shared<SampleSet>(std::move(schema), std::move(samples), root, "file:" + source,
                                     std::move(warnings));
}

}  // namespace odl::engine
