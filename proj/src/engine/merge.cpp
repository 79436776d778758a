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

#include "odl/engine/merge.hpp"

#include <algorithm>

namespace odl::engine {

using dsdl::FieldType;
using dsdl::RecordDef;
using dsdl::Schema;
using dsdl::TypeKind;

const dsdl::Sample& MergedSampleSet::at(std::size_t index) const {
  if (index >= samples_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(index) +
                                                " is out of range for a dataset of length " +
                                                std::to_string(samples_.size()));
  }
  return samples_[index];
}

std::pair<std::size_t, std::size_t> MergedSampleSet::locate(std::size_t index) const {
  if (index >= samples_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(index) + " is out of range");
  }
  // Last part whose first index is <= index; empty parts share an offset
  // with their successor and are skipped by upper_bound.
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end() - 1, index);
  const auto part = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {part, index - offsets_[part]};
}

const std::filesystem::path& MergedSampleSet::root_of(std::size_t index) const {
  const auto [part, local] = locate(index);
  return parts_[part]->root_of(local);
}

std::string MergedSampleSet::origin() const {
  std::string out = "concat(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += ", ";
    out += parts_[i]->origin();
  }
  return out + ")";
}

namespace {

[[noreturn]] void incompatible(std::size_t part, const std::string& where, const std::string& why) {
  throw Error(ErrorCode::IncompatibleSchemas,
              "part " + std::to_string(part) + " differs from part 0 at '" + where + "': " + why);
}

// Walks part k's sample layout in lockstep with part 0's and records which
// part domain feeds which part-0 domain.
class LayoutMatcher {
 public:
  LayoutMatcher(const Schema& base, const Schema& part, std::size_t part_index,
                std::vector<std::pair<std::string, std::string>>& domain_pairs)
      : base_(base), part_(part), index_(part_index), pairs_(domain_pairs) {}

  void records(const RecordDef& a, const RecordDef& b, const std::string& where, int depth) {
    const auto n = std::max(a.fields.size(), b.fields.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= a.fields.size()) incompatible(index_, where + b.fields[i].name, "field is not in part 0");
      if (i >= b.fields.size()) incompatible(index_, where + a.fields[i].name, "field is missing");
      const auto& fa = a.fields[i];
      const auto& fb = b.fields[i];
      if (fa.name != fb.name) {
        incompatible(index_, where + fa.name, "found field '" + fb.name + "' in its place");
      }
      if (a.is_optional(fa.name) != b.is_optional(fb.name)) {
        incompatible(index_, where + fa.name, "optionality differs");
      }
      types(fa.type, fb.type, where + fa.name, depth);
    }
  }

 private:
  void types(const FieldType& a, const FieldType& b, const std::string& where, int depth) {
    if (a.kind() != b.kind()) {
      incompatible(index_, where, "type " + a.to_string() + " vs " + b.to_string());
    }
    switch (a.kind()) {
      case TypeKind::Label: {
        for (const auto& [from, to] : pairs_) {
          if (from == b.name() && to != a.name()) {
            incompatible(index_, where,
                         "domain '" + b.name() + "' would map onto both '" + to + "' and '" + a.name() + "'");
          }
        }
        const auto pair = std::make_pair(b.name(), a.name());
        if (std::find(pairs_.begin(), pairs_.end(), pair) == pairs_.end()) pairs_.push_back(pair);
        break;
      }
      case TypeKind::List:
        types(a.element(), b.element(), where + "[]", depth);
        break;
      case TypeKind::Ref: {
        const auto* ra = base_.record(a.name());
        const auto* rb = part_.record(b.name());
        if (ra == nullptr || rb == nullptr) incompatible(index_, where, "unresolved record");
        if (depth > 64) incompatible(index_, where, "record nesting too deep");
        records(*ra, *rb, where + ".", depth + 1);
        break;
      }
      default:
        break;
    }
  }

  const Schema& base_;
  const Schema& part_;
  std::size_t index_;
  std::vector<std::pair<std::string, std::string>>& pairs_;
};

}  // namespace

std::shared_ptr<const MergedSampleSet> concat(const std::vector<DatasetPtr>& parts) {
  if (parts.empty()) throw Error(ErrorCode::EmptyConcat, "concat needs at least one dataset");
  for (const auto& p : parts) {
    if (!p) throw Error(ErrorCode::EmptyConcat, "concat received a null dataset");
  }

  const Schema& base = parts[0]->schema();
  // per part: ordered (part domain, part-0 domain) pairs
  std::vector<std::vector<std::pair<std::string, std::string>>> pairs(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    LayoutMatcher(base, parts[k]->schema(), k, pairs[k])
        .records(base.sample_record(), parts[k]->schema().sample_record(), "", 0);
  }

  // Unified class lists, keyed by part-0 domain name.
  std::map<std::string, std::vector<std::string>> unified;
  for (const auto& def : base.defs) {
    if (const auto* d = std::get_if<dsdl::ClassDomain>(&def)) unified[d->name] = d->classes;
  }
  for (std::size_t k = 1; k < parts.size(); ++k) {
    for (const auto& [from, to] : pairs[k]) {
      auto& classes = unified[to];
      for (const auto& name : parts[k]->schema().domain(from)->classes) {
        if (std::find(classes.begin(), classes.end(), name) == classes.end()) classes.push_back(name);
      }
    }
  }

  auto merged = std::shared_ptr<MergedSampleSet>(new MergedSampleSet());
  merged->parts_ = parts;
  merged->schema_ = base;
  for (auto& def : merged->schema_.defs) {
    if (auto* d = std::get_if<dsdl::ClassDomain>(&def)) d->classes = unified[d->name];
  }

  merged->offsets_.push_back(0);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& part_schema = parts[k]->schema();
    LabelRemap remap;
    for (const auto& [from, to] : pairs[k]) {
      remap.domain[from] = to;
      const auto& target = unified[to];
      auto& table = remap.index[from];
      for (const auto& name : part_schema.domain(from)->classes) {
        table.push_back(static_cast<std::size_t>(
            std::find(target.begin(), target.end(), name) - target.begin()));
      }
    }

    for (std::size_t i = 0; i < parts[k]->size(); ++i) {
      dsdl::Sample sample = parts[k]->at(i);
      dsdl::walk_record(sample, part_schema.sample_record(), part_schema,
                        [&](dsdl::Value& value, const FieldType& type) {
                          if (type.kind() != TypeKind::Label) return;
                          auto& label = std::get<dsdl::LabelValue>(value.data);
                          label.index = remap.index.at(type.name()).at(label.index);
                        });
      merged->samples_.push_back(std::move(sample));
    }
    merged->remaps_.push_back(std::move(remap));
    merged->offsets_.push_back(merged->samples_.size());
  }
  return merged;
}

}  // namespace odl::engine
