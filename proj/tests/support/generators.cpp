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

#include "generators.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace odl::testing {

using dsdl::FieldType;
using dsdl::TypeKind;

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

const std::vector<std::string>& tricky_pool() {
  static const std::vector<std::string> pool = {
      "cat", "dog", "person", "traffic light", "true", "False", "null", "~", "yes", "123",
      "-7", "0x1F", "1e3", "3.14", ".inf", "-.nan", "a: b", "key:", "#hash", "x #y", "- dash",
      "[bracket]", "{brace}", "comma,sep", "'single'", "\"double\"", "back\\slash", "tab\there",
      "new\nline", " lead", "trail ", "@at", "`tick", "%pct", "!bang", "&amp", "*star", "|pipe",
      ">gt", "?q", "café", "日本語", "emoji 🙂", "a:b", "http://x.y/z", "", "-", "---", "...",
      "o'neil", "quote\"mid"};
  return pool;
}

std::string identifier(Rng& rng, const std::string& prefix) {
  static const std::string alpha = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
  std::string out = prefix;
  const int len = uniform(rng, 1, 6);
  for (int i = 0; i < len; ++i) out.push_back(alpha[static_cast<std::size_t>(uniform(rng, 0, 52))]);
  return out;
}

double random_double(Rng& rng) {
  switch (uniform(rng, 0, 4)) {
    case 0: return 0.0;
    case 1: return static_cast<double>(uniform(rng, -1000, 1000)) / 8.0;
    case 2: return std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    case 3: return std::uniform_real_distribution<double>(0, 1)(rng) * 1e-9;
    default: return 1e300 * std::uniform_real_distribution<double>(-1, 1)(rng);
  }
}

double coordinate(Rng& rng) {
  return coin(rng) ? static_cast<double>(uniform(rng, 0, 1000))
                   : static_cast<double>(uniform(rng, 0, 4000)) / 4.0;
}

yaml::Node coord_node(Rng& rng) {
  return yaml::Node(yaml::Sequence{yaml::make_number(coordinate(rng)), yaml::make_number(coordinate(rng))});
}

FieldType random_type(Rng& rng, const std::vector<std::string>& domains,
                      const std::vector<std::string>& records, int list_budget) {
  const int roll = uniform(rng, 0, 12);
  if (roll == 11 && list_budget > 0) {
    return FieldType::list(random_type(rng, domains, records, list_budget - 1));
  }
  if (roll == 12 && !records.empty()) return FieldType::ref(pick(rng, records));
  if (roll == 10 && !domains.empty()) return FieldType::label(pick(rng, domains));
  static const std::vector<TypeKind> builtins = {TypeKind::Bool,  TypeKind::Int,     TypeKind::Num,
                                                 TypeKind::Str,   TypeKind::Coord,   TypeKind::BBox,
                                                 TypeKind::Polygon, TypeKind::Image, TypeKind::Text};
  return FieldType::builtin(pick(rng, builtins));
}

yaml::Node random_value(Rng& rng, const FieldType& type, const dsdl::Definitions& defs, int depth) {
  switch (type.kind()) {
    case TypeKind::Bool: return yaml::Node(coin(rng));
    case TypeKind::Int: return yaml::Node(static_cast<std::int64_t>(uniform(rng, -100000, 100000)));
    case TypeKind::Num:
      return coin(rng) ? yaml::Node(random_double(rng))
                       : yaml::Node(static_cast<std::int64_t>(uniform(rng, -50, 50)));
    case TypeKind::Str: return yaml::Node(tricky_string(rng));
    case TypeKind::Coord: return coord_node(rng);
    case TypeKind::BBox:
      return yaml::Node(yaml::Sequence{yaml::make_number(coordinate(rng)), yaml::make_number(coordinate(rng)),
                                       yaml::make_number(coordinate(rng)), yaml::make_number(coordinate(rng))});
    case TypeKind::Polygon: {
      yaml::Sequence seq;
      const int n = uniform(rng, 3, 6);
      for (int i = 0; i < n; ++i) seq.push_back(coord_node(rng));
      return yaml::Node(std::move(seq));
    }
    case TypeKind::Label: {
      const auto* domain = dsdl::find_domain(defs, type.name());
      return yaml::Node(pick(rng, domain->classes));
    }
    case TypeKind::Image:
    case TypeKind::Text: {
      static const std::vector<std::string> locators = {
          "media/000001.jpg", "media/a b/c.png", "file:///data/x.jpg", "http://example.com/a.jpg",
          "store://bucket/imgs/a.png",
          "media/k.jpg#sha256=e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"};
      return yaml::Node(pick(rng, locators));
    }
    case TypeKind::List: {
      yaml::Sequence seq;
      const int n = uniform(rng, 0, 3);
      for (int i = 0; i < n; ++i) seq.push_back(random_value(rng, type.element(), defs, depth + 1));
      return yaml::Node(std::move(seq));
    }
    case TypeKind::Ref:
      return random_sample(rng, *dsdl::find_record(defs, type.name()), defs, depth + 1);
  }
  return {};
}

}  // namespace

std::string tricky_string(Rng& rng) {
  if (coin(rng, 0.3)) return identifier(rng, "s");
  return pick(rng, tricky_pool());
}

yaml::Node random_yaml(Rng& rng, int depth) {
  const int roll = uniform(rng, 0, depth > 0 ? 8 : 5);
  switch (roll) {
    case 0: return yaml::Node();
    case 1: return yaml::Node(coin(rng));
    case 2: return yaml::Node(static_cast<std::int64_t>(uniform(rng, -1000000, 1000000)));
    case 3: return yaml::Node(random_double(rng));
    case 4:
    case 5: return yaml::Node(tricky_string(rng));
    case 6: {
      yaml::Sequence seq;
      const int n = uniform(rng, 0, 4);
      for (int i = 0; i < n; ++i) seq.push_back(random_yaml(rng, depth - 1));
      return yaml::Node(std::move(seq));
    }
    default: {
      yaml::Mapping map;
      std::set<std::string> keys;
      const int n = uniform(rng, 0, 4);
      for (int i = 0; i < n; ++i) {
        auto key = tricky_string(rng);
        if (!keys.insert(key).second) continue;
        map.push_back(yaml::Entry{key, random_yaml(rng, depth - 1), {}});
      }
      return yaml::Node(std::move(map));
    }
  }
}

yaml::Node random_sample(Rng& rng, const dsdl::RecordDef& record, const dsdl::Definitions& defs,
                         int depth) {
  yaml::Mapping map;
  for (const auto& field : record.fields) {
    if (record.is_optional(field.name) && coin(rng, 0.3)) continue;
    map.push_back(yaml::Entry{field.name, random_value(rng, field.type, defs, depth), {}});
  }
  return yaml::Node(std::move(map));
}

dsdl::DsdlDocument random_document(Rng& rng) {
  dsdl::DsdlDocument doc;
  std::set<std::string> used;
  std::vector<std::string> domain_names;
  std::vector<std::string> record_names;

  if (coin(rng, 0.3)) {
    static const std::vector<std::string> templates = {"classification", "object-detection",
                                                       "semantic-segmentation", "ocr"};
    doc.imports.push_back(pick(rng, templates));
    for (const auto& def : dsdl::find_template(doc.imports.back())->defs) {
      used.insert(dsdl::definition_name(def));
    }
  }
  if (coin(rng, 0.6)) {
    auto meta = random_yaml(rng, 2);
    if (!meta.is_mapping()) meta = yaml::Node(yaml::Mapping{yaml::Entry{"value", meta, {}}});
    doc.meta = std::move(meta);
  }

  auto fresh = [&](const std::string& prefix) {
    while (true) {
      auto name = identifier(rng, prefix);
      if (used.insert(name).second) return name;
    }
  };

  const int n_domains = uniform(rng, doc.imports.empty() ? 0 : 1, 3);
  for (int d = 0; d < n_domains; ++d) {
    dsdl::ClassDomain domain;
    domain.name = (d == 0 && !doc.imports.empty()) ? std::string(dsdl::kTemplateDomain) : fresh("D");
    used.insert(domain.name);
    std::set<std::string> seen;
    const int n_classes = uniform(rng, 1, 30);
    while (static_cast<int>(domain.classes.size()) < n_classes) {
      auto name = coin(rng, 0.5) ? identifier(rng, "c") : tricky_string(rng);
      if (name.empty() || !seen.insert(name).second) continue;
      domain.classes.push_back(std::move(name));
    }
    domain_names.push_back(domain.name);
    doc.defs.emplace_back(std::move(domain));
  }

  const int n_records = uniform(rng, 1, 4);
  for (int r = 0; r < n_records; ++r) {
    dsdl::RecordDef record;
    record.name = fresh("R");
    std::set<std::string> field_names;
    const int n_fields = uniform(rng, 1, 6);
    while (static_cast<int>(record.fields.size()) < n_fields) {
      auto name = identifier(rng, "f");
      if (!field_names.insert(name).second) continue;
      record.fields.push_back(dsdl::FieldDef{name, random_type(rng, domain_names, record_names, 3), {}});
    }
    for (const auto& f : record.fields) {
      if (coin(rng, 0.25)) record.optional_fields.push_back(f.name);
    }
    record_names.push_back(record.name);
    doc.defs.emplace_back(std::move(record));
  }

  if (coin(rng, 0.8)) {
    dsdl::DataSection data;
    data.sample_type = record_names.back();
    if (coin(rng, 0.2)) {
      data.samples = std::string("samples/train.yaml");
    } else {
      dsdl::Definitions all;
      if (!doc.imports.empty()) all = dsdl::find_template(doc.imports.front())->defs;
      all.insert(all.end(), doc.defs.begin(), doc.defs.end());
      std::vector<yaml::Node> samples;
      const int n = uniform(rng, 0, 3);
      for (int i = 0; i < n; ++i) {
        samples.push_back(random_sample(rng, *dsdl::find_record(doc.defs, data.sample_type), all));
      }
      data.samples = std::move(samples);
    }
    doc.data = std::move(data);
  }
  return doc;
}

}  // namespace odl::testing
