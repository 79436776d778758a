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

#include "odl/engine/render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "odl/core/digest.hpp"
#include "odl/engine/media.hpp"

namespace odl::engine {

using dsdl::FieldType;
using dsdl::RecordDef;
using dsdl::TypeKind;

namespace {

struct Layout {
  RenderShape shape;
  std::string media_field;
  std::string objects_field;  // detection / polygons
  std::string label_field;    // classification
};

const dsdl::FieldDef* first_of_kind(const RecordDef& rec, TypeKind kind) {
  for (const auto& f : rec.fields) {
    if (f.type.kind() == kind) return &f;
  }
  return nullptr;
}

Layout analyze(const dsdl::Schema& schema) {
  const auto& rec = schema.sample_record();
  const auto* media = first_of_kind(rec, TypeKind::Image);
  if (media == nullptr) {
    throw Error(ErrorCode::UnsupportedForRender, "sample type " + rec.name + " has no Image field");
  }
  for (const auto& f : rec.fields) {
    if (f.type.kind() != TypeKind::List || f.type.element().kind() != TypeKind::Ref) continue;
    const auto* obj = schema.record(f.type.element().name());
    if (obj == nullptr) continue;
    if (first_of_kind(*obj, TypeKind::BBox) != nullptr) {
      return {RenderShape::Detection, media->name, f.name, {}};
    }
    if (first_of_kind(*obj, TypeKind::Polygon) != nullptr) {
      return {RenderShape::Polygons, media->name, f.name, {}};
    }
  }
  if (const auto* label = first_of_kind(rec, TypeKind::Label)) {
    return {RenderShape::Classification, media->name, {}, label->name};
  }
  throw Error(ErrorCode::UnsupportedForRender,
              "sample type " + rec.name + " matches no classification, detection, segmentation or OCR layout");
}

std::string num(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n') {
          out += ' ';
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

const std::array<const char*, 10> kPalette = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
                                              "#46f0f0", "#f032e6", "#bcf60c", "#008080", "#9a6324"};

std::string mime_for(const std::string& extension) {
  if (extension == "png") return "image/png";
  if (extension == "jpg" || extension == "jpeg") return "image/jpeg";
  if (extension == "gif") return "image/gif";
  if (extension == "svg") return "image/svg+xml";
  return "application/octet-stream";
}

struct Shape {
  std::optional<dsdl::BBox> box;
  std::vector<dsdl::Coord> polygon;
  std::string caption;
  std::size_t color = 0;
};

std::string caption_of(const dsdl::Record& obj, std::size_t& color) {
  for (const auto& field : obj) {
    if (const auto* label = std::get_if<dsdl::LabelValue>(&field.value.data)) {
      color = label->index;
      return label->name;
    }
  }
  for (const auto& field : obj) {
    if (const auto* text = std::get_if<std::string>(&field.value.data)) return *text;
  }
  return {};
}

}  // namespace

RenderShape render_shape(const dsdl::Schema& schema) { return analyze(schema).shape; }

std::string render_sample(const Dataset& ds, std::size_t index, const RenderOptions& options,
                          const locator::ResolutionRoots& roots) {
  const auto layout = analyze(ds.schema());
  const auto& sample = ds.at(index);
  const auto item_roots = roots_for(ds, index, roots);

  std::vector<Shape> shapes;
  std::string badge;
  std::size_t badge_color = 0;
  if (layout.shape == RenderShape::Classification) {
    if (const auto* v = dsdl::find_field(sample, layout.label_field)) {
      const auto& label = std::get<dsdl::LabelValue>(v->data);
      badge = label.name;
      badge_color = label.index;
    }
  } else if (const auto* v = dsdl::find_field(sample, layout.objects_field)) {
    for (const auto& item : std::get<dsdl::List>(v->data)) {
      const auto& obj = std::get<dsdl::Record>(item.data);
      Shape shape;
      shape.caption = caption_of(obj, shape.color);
      for (const auto& field : obj) {
        if (const auto* box = std::get_if<dsdl::BBox>(&field.value.data)) {
          if (!shape.box && layout.shape == RenderShape::Detection) shape.box = *box;
        } else if (const auto* poly = std::get_if<dsdl::Polygon>(&field.value.data)) {
          if (shape.polygon.empty() && layout.shape == RenderShape::Polygons) shape.polygon = poly->points;
        }
      }
      shapes.push_back(std::move(shape));
    }
  }

  // Canvas: media header when readable, else the annotation extent.
  std::optional<ImageSize> canvas;
  std::string href;
  if (const auto* media = dsdl::find_field(sample, layout.media_field)) {
    const auto& raw = std::get<dsdl::MediaRef>(media->data).locator;
    const auto loc = locator::parse_locator(raw);
    std::optional<std::string> bytes;
    try {
      bytes = locator::fetch(loc, item_roots);
    } catch (const Error& e) {
      if (options.embed_media) {
        throw Error(ErrorCode::MediaUnavailable, "cannot embed " + raw + ": " + e.what());
      }
    }
    if (bytes) canvas = probe_image_size(*bytes);
    if (options.embed_media) {
      href = "data:" + mime_for(loc.extension()) + ";base64," + base64_encode(*bytes);
    } else if (auto path = locator::local_path(loc, item_roots)) {
      href = "file://" + std::filesystem::absolute(*path).lexically_normal().string();
    } else if (loc.scheme == locator::Scheme::Store) {
      href = raw;
    } else {
      href = loc.url();
    }
  }
  if (!canvas) {
    double w = 1;
    double h = 1;
    for (const auto& s : shapes) {
      if (s.box) {
        w = std::max(w, s.box->x + s.box->w);
        h = std::max(h, s.box->y + s.box->h);
      }
      for (const auto& p : s.polygon) {
        w = std::max(w, p.x);
        h = std::max(h, p.y);
      }
    }
    canvas = ImageSize{static_cast<int>(std::ceil(w)), static_cast<int>(std::ceil(h))};
  }

  const auto W = std::to_string(canvas->width);
  const auto H = std::to_string(canvas->height);
  const int font = std::max(10, std::min(canvas->width, canvas->height) / 30);
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\""
      << " version=\"1.1\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' '
      << H << "\">\n";
  if (!href.empty()) {
    svg << "  <image x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" xlink:href=\""
        << xml_escape(href) << "\"/>\n";
  }
  svg << "  <g font-family=\"sans-serif\" font-size=\"" << font << "\">\n";
  if (layout.shape == RenderShape::Classification) {
    svg << "    <text x=\"" << font / 2 << "\" y=\"" << font + font / 2 << "\" fill=\""
        << kPalette[badge_color % kPalette.size()] << "\" stroke=\"#000000\" stroke-width=\"0.5\""
        << " font-weight=\"bold\">" << xml_escape(badge) << "</text>\n";
  }
  for (const auto& s : shapes) {
    const auto* color = kPalette[s.color % kPalette.size()];
    if (s.box) {
      svg << "    <rect x=\"" << num(s.box->x) << "\" y=\"" << num(s.box->y) << "\" width=\""
          << num(s.box->w) << "\" height=\"" << num(s.box->h) << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
      svg << "    <text x=\"" << num(s.box->x) << "\" y=\"" << num(std::max(0.0, s.box->y - 3))
          << "\" fill=\"" << color << "\">" << xml_escape(s.caption) << "</text>\n";
    } else if (!s.polygon.empty()) {
      svg << "    <polygon points=\"";
      for (std::size_t i = 0; i < s.polygon.size(); ++i) {
        if (i > 0) svg << ' ';
        svg << num(s.polygon[i].x) << ',' << num(s.polygon[i].y);
      }
      svg << "\" fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
      const auto top = *std::min_element(s.polygon.begin(), s.polygon.end(),
                                         [](const auto& a, const auto& b) { return a.y < b.y; });
      svg << "    <text x=\"" << num(top.x) << "\" y=\"" << num(std::max(0.0, top.y - 3)) << "\" fill=\""
          << color << "\">" << xml_escape(s.caption) << "</text>\n";
    }
  }
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

}  // namespace odl::engine
