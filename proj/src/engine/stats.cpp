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

#include "odl/engine/stats.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "odl/engine/media.hpp"

namespace odl::engine {

using dsdl::FieldType;
using dsdl::TypeKind;

std::string size_bucket(std::uintmax_t bytes) {
  constexpr std::uintmax_t KiB = 1024;
  constexpr std::uintmax_t MiB = 1024 * KiB;
  if (bytes < 64 * KiB) return "<64KiB";
  if (bytes < MiB) return "<1MiB";
  if (bytes < 16 * MiB) return "<16MiB";
  return "≥16MiB";
}

namespace {

struct MediaItem {
  std::string locator;
  locator::ResolutionRoots roots;
};

struct Probe {
  std::string extension;
  std::uintmax_t size = 0;
  std::optional<ImageSize> resolution;
  std::optional<std::string> failure;
};

Probe probe(const MediaItem& item) {
  Probe out;
  try {
    const auto loc = locator::parse_locator(item.locator);
    out.extension = loc.extension();
    const auto bytes = locator::fetch(loc, item.roots);
    out.size = bytes.size();
    out.resolution = probe_image_size(bytes);
  } catch (const Error& e) {
    out.failure = e.what();
  }
  return out;
}

}  // namespace

DatasetStats compute_stats(const Dataset& ds, const locator::ResolutionRoots& roots) {
  DatasetStats stats;
  stats.samples = ds.size();
  const auto& schema = ds.schema();

  std::vector<MediaItem> items;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto item_roots = roots_for(ds, i, roots);
    dsdl::walk_record(ds.at(i), schema.sample_record(), schema,
                      [&](const dsdl::Value& value, const FieldType& type) {
                        if (type.kind() == TypeKind::Label) {
                          ++stats.class_frequency[std::get<dsdl::LabelValue>(value.data).name];
                        } else if (type.kind() == TypeKind::Image) {
                          items.push_back({std::get<dsdl::MediaRef>(value.data).locator, item_roots});
                        }
                      });
  }
  stats.media_items = items.size();

  // Fixed-size batches of async probes; results land by index so the
  // outcome never depends on completion order.
  std::vector<Probe> probes(items.size());
  const std::size_t width = std::max(2u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < items.size(); start += width) {
    const auto end = std::min(items.size(), start + width);
    std::vector<std::future<Probe>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, probe, std::cref(items[i])));
    }
    for (std::size_t i = start; i < end; ++i) probes[i] = batch[i - start].get();
  }

  std::vector<std::string> failures;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto& p = probes[i];
    if (p.failure) {
      failures.push_back(items[i].locator + " (" + *p.failure + ")");
      continue;
    }
    ++stats.extension_histogram[p.extension];
    ++stats.size_histogram[size_bucket(p.size)];
    if (p.resolution) {
      ++stats.resolution_histogram[resolution_key(*p.resolution)];
    } else {
      ++stats.resolution_histogram[std::string(kUnknownResolution)];
      stats.warnings.push_back(Diagnostic::warning(
          ErrorCode::UnknownResolution, "cannot read image dimensions of " + items[i].locator));
    }
  }
  if (!failures.empty()) {
    std::string message = "cannot resolve " + std::to_string(failures.size()) + " media item(s):";
    for (const auto& f : failures) message += "\n  " + f;
    throw Error(ErrorCode::MediaUnavailable, message);
  }
  return stats;
}

}  // namespace odl::engine
