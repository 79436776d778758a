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

#include "common.hpp"

namespace odl::convert::detail {

void conversion_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConversionError, where + ": " + what);
}

dsdl::Schema detection_schema(const std::vector<std::string>& classes) {
  dsdl::DsdlDocument doc;
  doc.imports = {"object-detection"};
  doc.defs.emplace_back(dsdl::ClassDomain{std::string(dsdl::kTemplateDomain), classes, {}});
  doc.data = dsdl::DataSection{"ObjectDetSample", std::vector<yaml::Node>{}, {}};
  auto resolved = dsdl::resolve_imports(doc);
  if (!resolved.ok()) conversion_error("object-detection template", "cannot be resolved");
  const auto diags = dsdl::validate(*resolved.document);
  if (has_errors(diags)) {
    throw Error(ErrorCode::ConversionError, "converted class list is not a valid domain", diags);
  }
  return *dsdl::schema_of(*resolved.document);
}

dsdl::Sample checked_sample(const yaml::Node& raw, const dsdl::Schema& schema, const std::string& where) {
  auto checked = dsdl::typecheck_sample(raw, schema.sample_record(), schema.defs, where);
  if (!checked.sample) {
    throw Error(ErrorCode::ConversionError, where + ": converted sample does not type-check",
                checked.diagnostics);
  }
  return std::move(*checked.sample);
}

yaml::Node bbox_node(double x, double y, double w, double h) {
  return yaml::Node(yaml::Sequence{yaml::make_number(x), yaml::make_number(y), yaml::make_number(w),
                                   yaml::make_number(h)});
}

}  // namespace odl::convert::detail
