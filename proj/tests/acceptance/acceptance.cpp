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

// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is non-zero when any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stop_token>

#include <nlohmann/json.hpp>

#include "odl/convert/convert.hpp"
#include "odl/core/digest.hpp"
#include "odl/core/files.hpp"
#include "odl/dsdl/dsdl.hpp"
#include "odl/engine/dataset.hpp"
#include "odl/engine/export.hpp"
#include "odl/engine/merge.hpp"
#include "odl/engine/stats.hpp"
#include "odl/registry/client.hpp"
#include "odl/registry/model.hpp"
#include "odl/registry/server.hpp"
#include "support/generators.hpp"
#include "support/merge_oracle.hpp"
#include "support/registry_fixture.hpp"
#include "support/support.hpp"

using namespace odl;
using odl::testing::fixture_dir;
using odl::testing::read_text;
using odl::testing::TempDir;
using odl::testing::write_text;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

// Empty string on success, otherwise the reason for failure.
using Check = std::function<std::string()>;

struct Criterion {
  std::string name;
  double limit_seconds;  // 0 = no runtime bound
  Check check;
};

std::string fmt_ms(Clock::duration d) {
  return std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(d).count()) + " ms";
}

// ---- parser round trip ----

std::string round_trip() {
  odl::testing::Rng rng(500);
  for (int i = 0; i < 500; ++i) {
    const auto doc = odl::testing::random_document(rng);
    const auto resolved = dsdl::resolve_imports(doc);
    if (!resolved.ok() || !dsdl::validate(*resolved.document).empty()) {
      return "generated document " + std::to_string(i) + " is not valid";
    }
    const auto text = dsdl::serialize_document(doc);
    const auto back = dsdl::parse_document(text);
    if (!back.ok()) return "document " + std::to_string(i) + " failed to reparse: " + back.diagnostics.front().to_string();
    if (!(*back.document == doc)) return "document " + std::to_string(i) + " changed structurally";
    if (dsdl::serialize_document(*back.document) != text) return "document " + std::to_string(i) + " is not byte-idempotent";
  }
  return {};
}

// ---- merge oracle ----

std::string merge_oracle() {
  odl::testing::Rng rng(1000);
  for (int i = 0; i < 1000; ++i) {
    const auto parts = odl::testing::random_parts(rng);
    const auto merged = engine::concat(parts);
    if (auto problem = odl::testing::check_against_oracle(*merged, parts); !problem.empty()) {
      return "instance " + std::to_string(i) + ": " + problem;
    }
    const auto single = engine::concat({parts[0]});
    if (single->size() != parts[0]->size() || !(single->schema() == parts[0]->schema())) {
      return "single-part concat of instance " + std::to_string(i) + " differs in size or schema";
    }
    for (std::size_t k = 0; k < single->size(); ++k) {
      if (!(single->at(k) == parts[0]->at(k))) return "single-part concat changed sample " + std::to_string(k);
    }
  }
  return {};
}

// ---- use-case replay ----

struct ExpectedBox {
  std::string label;
  std::array<double, 4> bbox;
};

// Reads VOC boxes with a regex scan, independent of the XML importer.
std::vector<std::vector<ExpectedBox>> voc_oracle(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  const std::regex object(R"(<object>[\s\S]*?<name>([^<]+)</name>[\s\S]*?<xmin>([^<]+)</xmin>\s*<ymin>([^<]+)</ymin>\s*)"
                          R"(<xmax>([^<]+)</xmax>\s*<ymax>([^<]+)</ymax>)");
  std::vector<std::vector<ExpectedBox>> out;
  for (const auto& f : files) {
    const auto text = read_text(f);
    std::vector<ExpectedBox> boxes;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), object); it != std::sregex_iterator(); ++it) {
      const double xmin = std::stod((*it)[2]), ymin = std::stod((*it)[3]);
      const double xmax = std::stod((*it)[4]), ymax = std::stod((*it)[5]);
      boxes.push_back({(*it)[1], {xmin, ymin, xmax - xmin, ymax - ymin}});
    }
    out.push_back(std::move(boxes));
  }
  return out;
}

std::vector<std::vector<ExpectedBox>> coco_oracle(const fs::path& file) {
  const auto j = json::parse(read_text(file));
  std::map<int, std::string> cats;
  for (const auto& c : j["categories"]) cats[c["id"].get<int>()] = c["name"].get<std::string>();
  std::map<int, std::vector<ExpectedBox>> by_image;
  for (const auto& img : j["images"]) by_image[img["id"].get<int>()];
  for (const auto& a : j["annotations"]) {
    const auto& b = a["bbox"];
    by_image[a["image_id"].get<int>()].push_back(
        {cats.at(a["category_id"].get<int>()), {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()}});
  }
  std::vector<std::vector<ExpectedBox>> out;
  for (auto& [id, boxes] : by_image) out.push_back(std::move(boxes));
  return out;
}

std::string use_case_replay() {
  const auto voc_dir = fixture_dir() / "mini_voc";
  const auto coco_dir = fixture_dir() / "mini_coco";
  const auto voc = convert::import_voc({voc_dir / "Annotations", voc_dir / "JPEGImages", std::nullopt});
  const auto coco = convert::import_coco({coco_dir / "instances.json", coco_dir / "images"});

  TempDir tmp;
  std::vector<engine::DatasetPtr> parts;
  for (const auto& [name, ds] : {std::pair{"voc", voc}, std::pair{"coco", coco}}) {
    if (ds->size() != 3) return std::string(name) + " conversion has " + std::to_string(ds->size()) + " samples";
    const auto doc = engine::export_sampleset(*ds, tmp / name, "train");
    auto diags = dsdl::validate(engine::to_document(*ds));
    if (has_errors(diags)) return std::string(name) + " does not validate: " + first_error(diags)->to_string();
    parts.push_back(engine::open_sampleset(doc));
  }
  const auto merged = engine::concat(parts);
  const auto out_doc = engine::export_sampleset(*merged, tmp / "merged", "train");
  const auto reopened = engine::open_sampleset(out_doc);
  if (reopened->size() != 6) return "merged length is " + std::to_string(reopened->size());

  auto expected = voc_oracle(voc_dir / "Annotations");
  for (auto& s : coco_oracle(coco_dir / "instances.json")) expected.push_back(std::move(s));
  if (expected.size() != 6) return "oracle found " + std::to_string(expected.size()) + " images";
  const auto& classes = reopened->schema().domain(dsdl::kTemplateDomain)->classes;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& objects = std::get<dsdl::List>(dsdl::find_field(reopened->at(i), "objects")->data);
    if (objects.size() != expected[i].size()) return "sample " + std::to_string(i) + " has the wrong object count";
    for (std::size_t k = 0; k < objects.size(); ++k) {
      const auto& obj = std::get<dsdl::Record>(objects[k].data);
      const auto box = std::get<dsdl::BBox>(dsdl::find_field(obj, "bbox")->data);
      const auto label = std::get<dsdl::LabelValue>(dsdl::find_field(obj, "label")->data);
      const auto& want = expected[i][k];
      if (box != dsdl::BBox{want.bbox[0], want.bbox[1], want.bbox[2], want.bbox[3]}) {
        return "sample " + std::to_string(i) + " object " + std::to_string(k) + " bbox differs from the oracle";
      }
      if (label.name != want.label || classes.at(label.index) != want.label) {
        return "sample " + std::to_string(i) + " object " + std::to_string(k) + " has label " + label.name;
      }
    }
  }
  return {};
}

// ---- stats ----

std::string bucket(std::uintmax_t bytes) {
  if (bytes < 65536) return "<64KiB";
  if (bytes < 1048576) return "<1MiB";
  if (bytes < 16777216) return "<16MiB";
  return "≥16MiB";
}

std::string stats_correctness() {
  TempDir dir;
  struct Item {
    const char* file;
    int w, h;  // 0 for a non-image payload
    std::vector<const char*> labels;
  };
  const std::vector<Item> items{{"a.jpg", 640, 480, {"dog", "cat"}},
                                {"b.jpeg", 320, 240, {"dog"}},
                                {"c.png", 16, 16, {}},
                                {"d.PNG", 800, 600, {"person", "dog", "dog"}},
                                {"e.jpg", 0, 0, {"cat"}}};
  std::string samples;
  std::map<std::string, std::size_t> ext, sizes, res, classes;
  for (const auto& it : items) {
    const auto path = dir / (std::string("media/") + it.file);
    const std::string e = fs::path(it.file).extension().string().substr(1);
    if (it.w == 0) {
      write_text(path, std::string(200000, 'q'));
      ++res["unknown"];
    } else if (e == "png" || e == "PNG") {
      odl::testing::write_png(path, it.w, it.h);
      ++res[std::to_string(it.w) + "×" + std::to_string(it.h)];
    } else {
      odl::testing::write_jpeg(path, it.w, it.h, it.w == 320);
      ++res[std::to_string(it.w) + "×" + std::to_string(it.h)];
    }
    std::string lower = e;
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    ++ext[lower];
    ++sizes[bucket(fs::file_size(path))];
    samples += "    - {media: media/" + std::string(it.file) + ", objects: [";
    for (std::size_t k = 0; k < it.labels.size(); ++k) {
      samples += (k ? ", " : "") + std::string("{bbox: [0, 0, 1, 1], label: ") + it.labels[k] + "}";
      ++classes[it.labels[k]];
    }
    samples += "]}\n";
  }
  write_text(dir / "dsdl/set-a/a.yaml",
             "$dsdl-version: \"1.0\"\n$import: [object-detection]\ndefs:\n  ClassDom:\n    $def: class_domain\n"
             "    classes: [dog, cat, person]\ndata:\n  sample-type: ObjectDetSample\n  samples:\n" + samples);
  const auto stats = engine::compute_stats(*engine::open_sampleset(dir / "dsdl/set-a/a.yaml"));
  if (stats.extension_histogram != ext) return "extension histogram differs";
  if (stats.size_histogram != sizes) return "size histogram differs";
  if (stats.resolution_histogram != res) return "resolution histogram differs";
  if (stats.class_frequency != classes) return "class histogram differs";
  if (stats.resolution_histogram.count("16×16") != 1) return "16×16 PNG not recognised";
  return {};
}

// ---- download ----

std::string sha256sum(const fs::path& path) {
  const std::string cmd = "sha256sum '" + path.string() + "'";
  std::FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  char buf[128] = {};
  const auto n = std::fread(buf, 1, 64, pipe);
  ::pclose(pipe);
  return std::string(buf, n);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> file_ranges(const registry::RegistryServer& s) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& r : s.request_log()) {
    if (r.path.rfind("/api/v1/files/", 0) == 0 && r.bytes) out.push_back(*r.bytes);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string download_resume() {
  constexpr std::size_t kSize = 10u << 20;
  TempDir reg;
  odl::testing::write_dataset(reg.path(), "bench", "big",
                              odl::testing::datacard_json("bench", "big", "10 MiB payload", {"Other"}, {"Binary"}),
                              {{"payload.bin", odl::testing::random_bytes(kSize, 77)}});
  const auto source = reg / "bench/big/payload.bin";
  const auto want = sha256sum(source);
  if (want.size() != 64) return "sha256sum oracle unavailable";
  auto server = registry::RegistryServer::start(reg.path());

  // Fresh download.
  {
    TempDir out;
    registry::DownloadOptions opts;
    opts.jobs = 4;
    const auto report = registry::download_dataset(server->endpoint(), "bench", "big", out.path(), opts);
    if (!report.verified || report.bytes_fetched != kSize) return "fresh download incomplete";
    if (sha256sum(out / "payload.bin") != want) return "fresh download digest mismatch";
    if (file_ranges(*server).size() != 3) return "expected 3 ranged requests for 10 MiB in 4 MiB chunks";
  }

  // Interrupt at about half, then resume.
  TempDir out;
  server->clear_log();
  std::stop_source stop;
  registry::DownloadOptions opts;
  opts.jobs = 4;
  opts.stop = stop.get_token();
  opts.on_progress = [&](const registry::DownloadProgress& p) {
    if (p.fetched >= kSize / 2) stop.request_stop();
  };
  const auto first = registry::download_dataset(server->endpoint(), "bench", "big", out.path(), opts);
  if (!first.interrupted || first.verified) return "interrupt did not stop the transfer";
  if (first.bytes_fetched < kSize / 2 || first.bytes_fetched >= kSize) {
    return "interrupted run fetched " + std::to_string(first.bytes_fetched) + " bytes";
  }
  if (fs::exists(out / "payload.bin")) return "partial file visible under its final name";

  server->clear_log();
  registry::DownloadOptions resume;
  resume.jobs = 4;
  const auto second = registry::download_dataset(server->endpoint(), "bench", "big", out.path(), resume);
  if (!second.verified) return "resumed download not verified";
  const auto ranges = file_ranges(*server);
  std::uint64_t requested = 0;
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (i > 0 && ranges[i].first < ranges[i - 1].second) return "resumed ranges overlap";
    requested += ranges[i].second - ranges[i].first;
  }
  if (requested != kSize - first.bytes_fetched) {
    return "resume requested " + std::to_string(requested) + " bytes, " + std::to_string(kSize - first.bytes_fetched) +
           " were missing";
  }
  if (second.bytes_fetched != requested) return "resume fetched more than it requested";
  if (sha256sum(out / "payload.bin") != want) return "resumed file digest mismatch";

  // Rerun after success.
  server->clear_log();
  const auto third = registry::download_dataset(server->endpoint(), "bench", "big", out.path(), resume);
  if (!third.verified || third.bytes_fetched != 0 || !file_ranges(*server).empty() || server->bytes_served() != 0) {
    return "rerun after success fetched data";
  }

  // A plain .part holding the first half resumes from its length.
  TempDir prefix;
  write_text(prefix / "payload.bin.part", read_text(source).substr(0, kSize / 2));
  server->clear_log();
  const auto fourth = registry::download_dataset(server->endpoint(), "bench", "big", prefix.path(), resume);
  if (!fourth.verified || fourth.bytes_fetched != kSize / 2) return "prefix resume fetched the wrong amount";
  for (const auto& [b, e] : file_ranges(*server)) {
    if (b < kSize / 2) return "prefix resume requested a range below the partial length";
  }
  if (sha256sum(prefix / "payload.bin") != want) return "prefix resume digest mismatch";
  return {};
}

// ---- license closure ----

std::string license_closure() {
  const std::map<std::string, std::map<std::string, std::set<std::string>>> allowed{
      {"CC",
       {{"CC0", {}},
        {"BY", {"BY"}},
        {"BY-SA", {"BY", "SA"}},
        {"BY-NC", {"BY", "NC"}},
        {"BY-NC-SA", {"BY", "NC", "SA"}},
        {"BY-ND", {"BY", "ND"}},
        {"BY-NC-ND", {"BY", "NC", "ND"}}}},
      {"ODC", {{"PDDL", {}}, {"ODC-BY", {}}, {"ODbL", {}}}},
      {"CDLA", {{"Permissive-2.0", {}}, {"Sharing-1.0", {}}}},
  };
  std::set<std::string> variants{"BY-SA-ND", "", "by", "CC-BY"};
  for (const auto& [f, vs] : allowed) {
    for (const auto& [v, flags] : vs) variants.insert(v);
  }
  const std::array<std::pair<const char*, unsigned>, 4> bits{
      {{"BY", registry::BY}, {"SA", registry::SA}, {"NC", registry::NC}, {"ND", registry::ND}}};
  std::size_t cells = 0;
  std::size_t accepted = 0;
  for (auto family : {registry::LicenseFamily::CC, registry::LicenseFamily::ODC, registry::LicenseFamily::CDLA}) {
    const std::string fname(registry::family_name(family));
    for (unsigned subset = 0; subset < 16; ++subset) {
      ++cells;
      std::set<std::string> names;
      unsigned flags = 0;
      for (unsigned b = 0; b < 4; ++b) {
        if ((subset >> b) & 1u) {
          names.insert(bits[b].first);
          flags |= bits[b].second;
        }
      }
      for (const auto& v : variants) {
        const auto fam = allowed.at(fname);
        const bool expect = fam.count(v) != 0 && fam.at(v) == names;
        const auto diag = registry::validate_license({family, v, flags});
        if (expect != !diag.has_value()) {
          return fname + " '" + v + "' {" + registry::flags_to_string(flags) + "} " +
                 (expect ? "rejected" : "accepted");
        }
        if (diag && diag->code != ErrorCode::InvalidLicense) return "rejection used the wrong code";
        accepted += expect ? 1 : 0;
      }
    }
  }
  if (cells != 48) return "sweep covered " + std::to_string(cells) + " cells";
  if (accepted != 12) return "accepted " + std::to_string(accepted) + " combinations";
  return {};
}

// ---- CLI contract ----

struct Process {
  int status;
  std::string out;
  std::string err;
};

Process run_odl(const fs::path& cwd, const std::string& args, const std::string& endpoint) {
  TempDir io;
  const std::string cmd = "cd '" + cwd.string() + "' && ODL_ENDPOINT='" + endpoint + "' '" ODL_BINARY "' " + args +
                          " >'" + (io / "out").string() + "' 2>'" + (io / "err").string() + "'";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, read_text(io / "out"), read_text(io / "err")};
}

std::string cli_contract() {
  TempDir reg;
  odl::testing::populate_demo_registry(reg.path());
  auto server = registry::RegistryServer::start(reg.path());
  TempDir work;

  auto get = run_odl(work.path(), "dataset get --dataset-repo OpenDataLab/PASCAL_VOC2007", server->endpoint());
  if (get.status != 0) return "get exited " + std::to_string(get.status) + ": " + get.err;
  const auto target = work / "OpenDataLab___PASCAL_VOC2007";
  const auto manifest = registry::fetch_manifest(server->endpoint(), "OpenDataLab", "PASCAL_VOC2007");
  if (manifest.entries.empty()) return "empty manifest";
  for (const auto& e : manifest.entries) {
    const auto p = target / e.path;
    if (!fs::is_regular_file(p)) return "missing " + e.path;
    if (fs::file_size(p) != e.size || sha256sum(p) != e.sha256) return e.path + " does not match the manifest";
  }

  auto missing = run_odl(work.path(), "dataset get", server->endpoint());
  if (missing.status != 3) return "missing flag exited " + std::to_string(missing.status);
  if (missing.err.find("--dataset-repo") == std::string::npos) return "missing flag not reported on stderr";

  write_text(work / "bad.yaml", "defs: {}\n");
  auto invalid = run_odl(work.path(), "dsdl validate bad.yaml", server->endpoint());
  if (invalid.status != 1) return "invalid document exited " + std::to_string(invalid.status);
  if (invalid.err.find("MissingVersion") == std::string::npos) return "invalid document diagnostics not on stderr";
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"parser round trip (500 documents)", 10, round_trip},
      {"merge oracle (1000 instances, single-part identity)", 10, merge_oracle},
      {"detection use-case replay (VOC + COCO, length 6)", 5, use_case_replay},
      {"stats correctness (including 16x16 PNG)", 0, stats_correctness},
      {"download integrity and resume (10 MiB, jobs=4)", 30, download_resume},
      {"license closure (3 families x 16 flag subsets)", 0, license_closure},
      {"CLI contract (get, missing flag, invalid document)", 0, cli_contract},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    std::string problem;
    try {
      problem = c.check();
    } catch (const std::exception& e) {
      problem = std::string("threw: ") + e.what();
    }
    const auto elapsed = Clock::now() - start;
    const double seconds = std::chrono::duration<double>(elapsed).count();
    if (problem.empty() && c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      problem = "took " + fmt_ms(elapsed) + ", limit " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
    }
    if (problem.empty()) {
      std::cout << "PASS  " << c.name << "  (" << fmt_ms(elapsed) << ")\n";
    } else {
      ++failures;
      std::cout << "FAIL  " << c.name << ": " << problem << "  (" << fmt_ms(elapsed) << ")\n";
    }
    std::cout.flush();
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
