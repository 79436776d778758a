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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <random>
#include <sstream>

#include "odl/convert/convert.hpp"
#include "odl/dsdl/dsdl.hpp"
#include "odl/engine/export.hpp"
#include "support/support.hpp"

using namespace odl;
using odl::testing::fixture_dir;
using odl::testing::TempDir;
using odl::testing::write_text;
namespace fs = std::filesystem;

namespace {

const dsdl::List& objects_of(const dsdl::Sample& s) {
  return std::get<dsdl::List>(dsdl::find_field(s, "objects")->data);
}

const dsdl::Record& object_at(const dsdl::Sample& s, std::size_t i) {
  return std::get<dsdl::Record>(objects_of(s).at(i).data);
}

dsdl::BBox bbox_of(const dsdl::Record& obj) { return std::get<dsdl::BBox>(dsdl::find_field(obj, "bbox")->data); }

std::string label_of(const dsdl::Record& obj) {
  return std::get<dsdl::LabelValue>(dsdl::find_field(obj, "label")->data).name;
}

std::vector<std::string> classes_of(const engine::Dataset& ds) {
  return ds.schema().domain(dsdl::kTemplateDomain)->classes;
}

ErrorCode error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected odl::Error");
  return ErrorCode::Syntax;
}

void conforms(const engine::Dataset& ds) {
  const auto doc = engine::to_document(ds);
  const auto diags = dsdl::validate(doc);
  CHECK_MESSAGE(diags.empty(), (diags.empty() ? "" : diags.front().message));
  // The canonical text must survive a reparse as well.
  auto reparsed = dsdl::parse_document(dsdl::serialize_document(doc));
  REQUIRE(reparsed.ok());
  CHECK(dsdl::validate(*reparsed.document).empty());
}

struct VocBox {
  std::string name;
  int xmin, ymin, xmax, ymax;
  int difficult;  // -1 when the element is omitted
};

std::string voc_xml(const std::string& file, const std::vector<VocBox>& boxes) {
  std::ostringstream out;
  out << "<annotation>\n  <filename>" << file << "</filename>\n"
      << "  <size><width>640</width><height>480</height><depth>3</depth></size>\n";
  for (const auto& b : boxes) {
    out << "  <object>\n    <name>" << b.name << "</name>\n";
    if (b.difficult >= 0) out << "    <difficult>" << b.difficult << "</difficult>\n";
    out << "    <bndbox><xmin>" << b.xmin << "</xmin><ymin>" << b.ymin << "</ymin><xmax>" << b.xmax
        << "</xmax><ymax>" << b.ymax << "</ymax></bndbox>\n  </object>\n";
  }
  out << "</annotation>\n";
  return out.str();
}

}  // namespace

TEST_CASE("VOC fixture converts with first-appearance classes") {
  const auto root = fixture_dir() / "mini_voc";
  auto ds = convert::import_voc({root / "Annotations", root / "JPEGImages", std::nullopt});
  REQUIRE(ds->size() == 3);
  CHECK(classes_of(*ds) == std::vector<std::string>{"dog", "cat", "person"});
  CHECK(ds->root() == fs::absolute(root).lexically_normal());

  const auto& first = ds->at(0);
  CHECK(std::get<dsdl::MediaRef>(dsdl::find_field(first, "media")->data).locator == "JPEGImages/000001.jpg");
  REQUIRE(objects_of(first).size() == 2);
  CHECK(bbox_of(object_at(first, 0)) == dsdl::BBox{48, 240, 147, 131});
  CHECK(label_of(object_at(first, 0)) == "dog");
  CHECK(std::get<bool>(dsdl::find_field(object_at(first, 1), "difficult")->data));
  CHECK(std::get<dsdl::LabelValue>(dsdl::find_field(object_at(first, 1), "label")->data).index == 1);
  conforms(*ds);
}

TEST_CASE("VOC with an explicit class list") {
  const auto root = fixture_dir() / "mini_voc";
  auto ds = convert::import_voc(
      {root / "Annotations", root / "JPEGImages", std::vector<std::string>{"person", "cat", "dog", "bird"}});
  CHECK(classes_of(*ds) == std::vector<std::string>{"person", "cat", "dog", "bird"});
  CHECK(std::get<dsdl::LabelValue>(dsdl::find_field(object_at(ds->at(0), 0), "label")->data).index == 2);

  CHECK(error_code([&] {
          convert::import_voc({root / "Annotations", root / "JPEGImages", std::vector<std::string>{"dog"}});
        }) == ErrorCode::ConversionError);
}

TEST_CASE("VOC failures name the file") {
  TempDir tmp;
  fs::create_directories(tmp / "ann");
  auto expect_failure = [&](const std::string& xml) {
    write_text(tmp / "ann" / "bad.xml", xml);
    try {
      convert::import_voc({tmp / "ann", tmp / "img", std::nullopt});
      FAIL("expected ConversionError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConversionError);
      CHECK(std::string(e.what()).find("bad.xml") != std::string::npos);
    }
  };
  expect_failure("<annotation><filename>a.jpg</filename></annotation>");
  expect_failure(
      "<annotation><size><width>5</width><height>5</height></size>"
      "<object><name>x</name></object></annotation>");
  expect_failure(voc_xml("a.jpg", {{"x", 10, 0, 5, 5, -1}}));
  expect_failure(voc_xml("a.jpg", {{"x", 0, 10, 5, 5, -1}}));
  expect_failure("<annotation><size><width>w</width>");
  expect_failure(
      "<annotation><size><width>5</width><height>5</height></size><object><name>x</name>"
      "<bndbox><xmin>a</xmin><ymin>0</ymin><xmax>1</xmax><ymax>1</ymax></bndbox></object></annotation>");

  CHECK(error_code([&] { convert::import_voc({tmp / "missing", tmp / "img", std::nullopt}); }) ==
        ErrorCode::NotFound);
}

TEST_CASE("VOC empty directory yields an empty dataset with a warning") {
  TempDir tmp;
  fs::create_directories(tmp / "ann");
  auto ds = convert::import_voc({tmp / "ann", tmp / "img", std::nullopt});
  CHECK(ds->size() == 0);
  REQUIRE(ds->warnings().size() == 1);
  CHECK(ds->warnings()[0].code == ErrorCode::EmptyDataset);
}

TEST_CASE("VOC properties over random trees") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> pool{"aeroplane", "bicycle", "bird", "boat", "bottle", "bus"};
  for (int round = 0; round < 40; ++round) {
    TempDir tmp;
    fs::create_directories(tmp / "Annotations");
    const int files = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<std::vector<VocBox>> truth;
    std::vector<std::string> first_seen;
    for (int f = 0; f < files; ++f) {
      std::vector<VocBox> boxes;
      const int n = std::uniform_int_distribution<int>(0, 5)(rng);
      for (int k = 0; k < n; ++k) {
        VocBox b;
        b.name = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        b.xmin = std::uniform_int_distribution<int>(0, 600)(rng);
        b.ymin = std::uniform_int_distribution<int>(0, 400)(rng);
        b.xmax = b.xmin + std::uniform_int_distribution<int>(0, 200)(rng);
        b.ymax = b.ymin + std::uniform_int_distribution<int>(0, 200)(rng);
        b.difficult = std::uniform_int_distribution<int>(-1, 1)(rng);
        boxes.push_back(b);
      }
      char name[16];
      std::snprintf(name, sizeof name, "%06d", f);
      write_text(tmp / "Annotations" / (std::string(name) + ".xml"), voc_xml(std::string(name) + ".jpg", boxes));
      for (const auto& b : boxes) {
        if (std::find(first_seen.begin(), first_seen.end(), b.name) == first_seen.end()) first_seen.push_back(b.name);
      }
      truth.push_back(std::move(boxes));
    }
    auto ds = convert::import_voc({tmp / "Annotations", tmp / "JPEGImages", std::nullopt});
    // Cardinality: one sample per file, one object per <object>.
    REQUIRE(ds->size() == truth.size());
    if (!first_seen.empty()) CHECK(classes_of(*ds) == first_seen);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      REQUIRE(objects_of(ds->at(i)).size() == truth[i].size());
      for (std::size_t k = 0; k < truth[i].size(); ++k) {
        const auto& obj = object_at(ds->at(i), k);
        const auto box = bbox_of(obj);
        const auto& t = truth[i][k];
        // Geometry inverse recovers the corner coordinates exactly.
        CHECK(box.x == t.xmin);
        CHECK(box.y == t.ymin);
        CHECK(box.x + box.w == t.xmax);
        CHECK(box.y + box.h == t.ymax);
        CHECK(label_of(obj) == t.name);
        const auto* difficult = dsdl::find_field(obj, "difficult");
        CHECK((difficult != nullptr) == (t.difficult >= 0));
        if (difficult != nullptr) CHECK(std::get<bool>(difficult->data) == (t.difficult == 1));
      }
    }
    conforms(*ds);
  }
}

TEST_CASE("COCO fixture converts by category and image id") {
  const auto root = fixture_dir() / "mini_coco";
  auto ds = convert::import_coco({root / "instances.json", root / "images"});
  REQUIRE(ds->size() == 3);
  CHECK(classes_of(*ds) == std::vector<std::string>{"person", "car", "dog"});
  CHECK(std::get<dsdl::MediaRef>(dsdl::find_field(ds->at(0), "media")->data).locator ==
        "images/000000000139.jpg");
  const auto& first = ds->at(0);
  REQUIRE(objects_of(first).size() == 2);
  CHECK(bbox_of(object_at(first, 0)) == dsdl::BBox{10.5, 20, 30, 40});
  CHECK(bbox_of(object_at(first, 1)) == dsdl::BBox{100, 120, 50.25, 60});
  CHECK(label_of(object_at(first, 1)) == "car");
  CHECK_FALSE(std::get<bool>(dsdl::find_field(object_at(first, 0), "iscrowd")->data));
  CHECK(std::get<bool>(dsdl::find_field(object_at(ds->at(2), 0), "iscrowd")->data));
  conforms(*ds);
}

TEST_CASE("COCO keeps unannotated images") {
  TempDir tmp;
  write_text(tmp / "i.json",
             R"({"images":[{"id":2,"file_name":"b.jpg"},{"id":1,"file_name":"a.jpg"}],)"
             R"("annotations":[{"image_id":2,"category_id":5,"bbox":[0,0,1,1]}],)"
             R"("categories":[{"id":5,"name":"x"}]})");
  auto ds = convert::import_coco({tmp / "i.json", tmp / "images"});
  REQUIRE(ds->size() == 2);
  CHECK(objects_of(ds->at(0)).empty());
  CHECK(objects_of(ds->at(1)).size() == 1);
}

TEST_CASE("COCO failures") {
  TempDir tmp;
  auto code_for = [&](const std::string& text) {
    write_text(tmp / "i.json", text);
    return error_code([&] { convert::import_coco({tmp / "i.json", tmp / "images"}); });
  };
  const std::string cats = R"("categories":[{"id":1,"name":"a"}])";
  const std::string imgs = R"("images":[{"id":1,"file_name":"a.jpg"}])";
  CHECK(code_for("{not json") == ErrorCode::ConversionError);
  CHECK(code_for("[]") == ErrorCode::ConversionError);
  CHECK(code_for("{" + imgs + "," + cats + "}") == ErrorCode::ConversionError);
  CHECK(code_for("{" + imgs + R"(,"annotations":[{"image_id":1,"category_id":7,"bbox":[0,0,1,1]}],)" + cats +
                 "}") == ErrorCode::ConversionError);
  CHECK(code_for("{" + imgs + R"(,"annotations":[{"image_id":9,"category_id":1,"bbox":[0,0,1,1]}],)" + cats +
                 "}") == ErrorCode::ConversionError);
  CHECK(code_for("{" + imgs + R"(,"annotations":[{"image_id":1,"category_id":1,"bbox":[0,0,-1,1]}],)" + cats +
                 "}") == ErrorCode::ConversionError);
  CHECK(code_for("{" + imgs + R"(,"annotations":[{"image_id":1,"category_id":1,"bbox":[0,0,1]}],)" + cats +
                 "}") == ErrorCode::ConversionError);
  CHECK(code_for(R"({"images":[{"id":1,"file_name":"a"},{"id":1,"file_name":"b"}],"annotations":[],)" + cats +
                 "}") == ErrorCode::ConversionError);
  CHECK(code_for("{" + imgs + R"(,"annotations":[],"categories":[{"id":1,"name":"a"},{"id":2,"name":"a"}]})") ==
        ErrorCode::ConversionError);
  CHECK(code_for("{" + imgs + R"(,"annotations":[],"categories":[{"id":1,"name":"a"},{"id":1,"name":"b"}]})") ==
        ErrorCode::ConversionError);
  CHECK(error_code([&] { convert::import_coco({tmp / "none.json", tmp / "images"}); }) == ErrorCode::NotFound);
}

TEST_CASE("COCO properties over random instance files") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 40; ++round) {
    TempDir tmp;
    nlohmann::json doc;
    doc["images"] = nlohmann::json::array();
    doc["annotations"] = nlohmann::json::array();
    doc["categories"] = nlohmann::json::array();
    std::vector<int> cat_ids;
    const int ncat = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int c = 0; c < ncat; ++c) {
      int id;
      do id = std::uniform_int_distribution<int>(1, 90)(rng);
      while (std::find(cat_ids.begin(), cat_ids.end(), id) != cat_ids.end());
      cat_ids.push_back(id);
      doc["categories"].push_back({{"id", id}, {"name", "c" + std::to_string(id)}});
    }
    std::vector<int> img_ids;
    const int nimg = std::uniform_int_distribution<int>(0, 8)(rng);
    for (int i = 0; i < nimg; ++i) {
      int id;
      do id = std::uniform_int_distribution<int>(1, 100000)(rng);
      while (std::find(img_ids.begin(), img_ids.end(), id) != img_ids.end());
      img_ids.push_back(id);
      doc["images"].push_back({{"id", id}, {"file_name", std::to_string(id) + ".jpg"}});
    }
    std::map<int, std::vector<nlohmann::json>> per_image;
    const int nann = nimg == 0 ? 0 : std::uniform_int_distribution<int>(0, 20)(rng);
    std::uniform_real_distribution<double> coord(0, 500);
    for (int a = 0; a < nann; ++a) {
      const int img = img_ids[std::uniform_int_distribution<std::size_t>(0, img_ids.size() - 1)(rng)];
      const int cat = cat_ids[std::uniform_int_distribution<std::size_t>(0, cat_ids.size() - 1)(rng)];
      nlohmann::json ann{{"image_id", img},
                         {"category_id", cat},
                         {"bbox", {coord(rng), coord(rng), coord(rng), coord(rng)}},
                         {"iscrowd", std::uniform_int_distribution<int>(0, 1)(rng)}};
      doc["annotations"].push_back(ann);
      per_image[img].push_back(ann);
    }
    write_text(tmp / "instances.json", doc.dump());
    auto ds = convert::import_coco({tmp / "instances.json", tmp / "images"});

    auto sorted_cats = cat_ids;
    std::sort(sorted_cats.begin(), sorted_cats.end());
    std::vector<std::string> expected_classes;
    for (int id : sorted_cats) expected_classes.push_back("c" + std::to_string(id));
    CHECK(classes_of(*ds) == expected_classes);

    auto sorted_imgs = img_ids;
    std::sort(sorted_imgs.begin(), sorted_imgs.end());
    REQUIRE(ds->size() == sorted_imgs.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < sorted_imgs.size(); ++i) {
      const auto& expected = per_image[sorted_imgs[i]];
      REQUIRE(objects_of(ds->at(i)).size() == expected.size());
      total += expected.size();
      for (std::size_t k = 0; k < expected.size(); ++k) {
        const auto& obj = object_at(ds->at(i), k);
        const auto& b = expected[k]["bbox"];
        CHECK(bbox_of(obj) == dsdl::BBox{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                                         b[3].get<double>()});
        CHECK(label_of(obj) == "c" + std::to_string(expected[k]["category_id"].get<int>()));
        CHECK(std::get<bool>(dsdl::find_field(obj, "iscrowd")->data) == (expected[k]["iscrowd"].get<int>() == 1));
      }
    }
    CHECK(total == static_cast<std::size_t>(nann));
    conforms(*ds);
  }
}
