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

#include "odl/cli/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>

#include "odl/convert/convert.hpp"
#include "odl/core/files.hpp"
#include "odl/dsdl/dsdl.hpp"
#include "odl/engine/dataset.hpp"
#include "odl/engine/export.hpp"
#include "odl/engine/merge.hpp"
#include "odl/engine/render.hpp"
#include "odl/engine/stats.hpp"
#include "odl/registry/client.hpp"
#include "odl/registry/server.hpp"

namespace odl::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::UsageError, message); }

std::pair<std::string, std::string> split_repo(const std::string& repo) {
  const auto slash = repo.find('/');
  if (slash == std::string::npos || repo.find('/', slash + 1) != std::string::npos) {
    usage("--dataset-repo must look like <namespace>/<name>, got '" + repo + "'");
  }
  auto ns = repo.substr(0, slash);
  auto name = repo.substr(slash + 1);
  if (!registry::is_identifier(ns) || !registry::is_identifier(name)) {
    usage("'" + repo + "' is not a valid dataset name");
  }
  return {ns, name};
}

json diagnostic_json(const Diagnostic& d) {
  json j{{"severity", d.is_error() ? "error" : "warning"}, {"code", code_name(d.code)}, {"message", d.message}};
  if (!d.location.path.empty()) j["path"] = d.location.path;
  if (d.location.known()) {
    j["line"] = d.location.line;
    j["column"] = d.location.column;
  }
  return j;
}

json diagnostics_json(const Diagnostics& diags) {
  json arr = json::array();
  for (const auto& d : diags) arr.push_back(diagnostic_json(d));
  return arr;
}

void print_diagnostics(std::ostream& err, const Diagnostics& diags) {
  for (const auto& d : diags) err << d.to_string() << "\n";
}

json summary_json(const registry::DatasetSummary& s) { return registry::to_json(s); }

std::string human_size(std::uint64_t bytes) {
  const char* units[] = {"B", "KiB", "MiB", "GiB", "TiB"};
  double v = static_cast<double>(bytes);
  int u = 0;
  while (v >= 1024 && u < 4) {
    v /= 1024;
    ++u;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, u == 0 ? "%.0f %s" : "%.1f %s", v, units[u]);
  return buf;
}

void histogram(std::ostream& out, const std::string& title, const std::map<std::string, std::size_t>& h) {
  out << title << ":\n";
  if (h.empty()) out << "  (none)\n";
  for (const auto& [k, v] : h) out << "  " << k << ": " << v << "\n";
}

class Commands {
 public:
  Commands(const Environment& env, std::ostream& out, std::ostream& err) : env_(env), out_(out), err_(err) {}

  std::string endpoint() const {
    if (!endpoint_.empty()) return endpoint_;
    if (const auto it = env_.find("ODL_ENDPOINT"); it != env_.end() && !it->second.empty()) return it->second;
    usage("no registry endpoint: pass --endpoint or set ODL_ENDPOINT");
  }

  void setup(CLI::App& app) {
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    auto* dataset = app.add_subcommand("dataset", "Browse, fetch and publish registry datasets");
    dataset->require_subcommand(1);
    auto* dsdl = app.add_subcommand("dsdl", "Work with DSDL documents");
    dsdl->require_subcommand(1);

    auto endpoint_flag = [this](CLI::App* cmd) {
      cmd->add_option("--endpoint", endpoint_, "Registry base URL (default: $ODL_ENDPOINT)");
    };

    auto* get = dataset->add_subcommand("get", "Download a dataset");
    get->alias("download");
    get->add_option("--dataset-repo", repo_, "<namespace>/<name>")->required();
    get->add_option("--target-path", target_, "Destination directory (default: ./<ns>___<name>)");
    get->add_option("--jobs", jobs_, "Concurrent connections")->check(CLI::Range(1u, 64u));
    get->add_flag("--json", json_, "Print the download report as JSON");
    endpoint_flag(get);
    get->callback([this] { dataset_get(); });

    auto* ls = dataset->add_subcommand("ls", "List or search datasets");
    ls->add_option("--query", query_, "Substring of namespace, name or readme");
    ls->add_option("--task", task_, "Task type filter");
    ls->add_option("--type", data_type_, "Data type filter");
    ls->add_option("--sort", sort_, "name or updated")->check(CLI::IsMember({"name", "updated"}));
    ls->add_flag("--json", json_, "Print JSON");
    endpoint_flag(ls);
    ls->callback([this] { dataset_ls(); });

    auto* info = dataset->add_subcommand("info", "Show a data card and its file manifest");
    info->add_option("--dataset-repo", repo_, "<namespace>/<name>")->required();
    info->add_flag("--json", json_, "Print JSON");
    endpoint_flag(info);
    info->callback([this] { dataset_info(); });

    auto* create = dataset->add_subcommand("create", "Publish a directory holding datacard.json and content files");
    create->add_option("--dataset-repo", repo_, "<namespace>/<name>")->required();
    create->add_option("--source", source_, "Directory to upload")->required();
    create->add_flag("--json", json_, "Print the new summary as JSON");
    endpoint_flag(create);
    create->callback([this] { dataset_create(); });

    auto* serve = dataset->add_subcommand("serve", "Run a registry over a local directory");
    serve->add_option("--root", root_, "Registry root")->required();
    serve->add_option("--host", host_, "Bind address");
    serve->add_option("--port", port_, "Port (0 picks one)")->check(CLI::Range(0, 65535));
    serve->callback([this] { dataset_serve(); });

    auto* validate = dsdl->add_subcommand("validate", "Check a document and its samples");
    validate->add_option("file", file_, "DSDL document")->required();
    validate->add_flag("--json", json_, "Print the diagnostics as JSON");
    validate->callback([this] { dsdl_validate(); });

    auto* stat = dsdl->add_subcommand("stat", "Media and label statistics");
    stat->add_option("file", file_, "DSDL document")->required();
    stat->add_flag("--json", json_, "Print JSON");
    stat->callback([this] { dsdl_stat(); });

    auto* vis = dsdl->add_subcommand("visualize", "Render one sample's annotations as SVG");
    vis->add_option("file", file_, "DSDL document")->required();
    vis->add_option("--index", index_, "Sample index")->required();
    vis->add_option("--out", out_file_, "Output .svg")->required();
    vis->add_flag("--embed-media", embed_, "Inline the image as a data URI");
    vis->callback([this] { dsdl_visualize(); });

    auto* merge = dsdl->add_subcommand("merge", "Concatenate datasets under a unified label space");
    merge->add_option("files", files_, "DSDL documents")->required();
    merge->add_option("--out", out_dir_, "Output dataset directory")->required();
    merge->add_option("--split", split_, "Split name")->required();
    merge->add_flag("--json", json_, "Print a JSON summary");
    merge->callback([this] { dsdl_merge(); });

    auto* conv = dsdl->add_subcommand("convert", "Import VOC or COCO detection annotations");
    conv->add_option("--from", from_, "voc or coco")->required()->check(CLI::IsMember({"voc", "coco"}));
    conv->add_option("--src", src_, "VOC root (Annotations/, JPEGImages/) or COCO instances JSON")->required();
    conv->add_option("--out", out_dir_, "Output dataset directory")->required();
    conv->add_option("--images", images_, "Image directory (default: JPEGImages/ or images/ next to the source)");
    conv->add_option("--classes", classes_, "Explicit VOC class order")->delimiter(',');
    conv->add_option("--split", split_, "Split name (default: train)");
    conv->add_flag("--json", json_, "Print a JSON summary");
    conv->callback([this] { dsdl_convert(); });
  }

  int status = kOk;

 private:
  void dataset_get() {
    const auto [ns, name] = split_repo(repo_);
    const auto target = target_.empty() ? fs::current_path() / registry::default_target_name(ns, name) : fs::path(target_);
    registry::DownloadOptions opts;
    opts.jobs = jobs_;
    const auto report = registry::download_dataset(endpoint(), ns, name, target, opts);
    if (json_) {
      out_ << json{{"dataset", ns + "/" + name},
                   {"target", target.string()},
                   {"bytes_fetched", report.bytes_fetched},
                   {"files", report.files},
                   {"verified", report.verified}}
                  .dump(2)
           << "\n";
    } else {
      out_ << ns << "/" << name << " -> " << target.string() << ": " << report.files << " files, "
           << human_size(report.bytes_fetched) << " fetched, " << (report.verified ? "verified" : "NOT verified")
           << "\n";
    }
    if (!report.verified) {
      err_ << "download incomplete\n";
      status = kIoError;
    }
  }

  void dataset_ls() {
    registry::SearchQuery q;
    if (!query_.empty()) q.text = query_;
    if (!task_.empty()) q.task_type = task_;
    if (!data_type_.empty()) q.data_type = data_type_;
    q.sort = sort_ == "updated" ? registry::SortOrder::Updated : registry::SortOrder::Name;
    const auto found = registry::search_datasets(endpoint(), q);
    if (json_) {
      json arr = json::array();
      for (const auto& s : found) arr.push_back(summary_json(s));
      out_ << arr.dump(2) << "\n";
      return;
    }
    for (const auto& s : found) {
      std::string tasks;
      for (const auto& t : s.task_types) tasks += (tasks.empty() ? "" : ", ") + t;
      out_ << s.repo() << "  [" << tasks << "]  " << s.license << "  " << s.files << " files, "
           << human_size(s.total_size) << "\n";
    }
    if (found.empty()) err_ << "no datasets match\n";
  }

  void dataset_info() {
    const auto [ns, name] = split_repo(repo_);
    const auto card = registry::fetch_datacard(endpoint(), ns, name);
    const auto manifest = registry::fetch_manifest(endpoint(), ns, name);
    if (json_) {
      out_ << json{{"datacard", registry::to_json(card)}, {"manifest", registry::to_json(manifest)}}.dump(2) << "\n";
      return;
    }
    const auto& m = card.metafile;
    out_ << card.repo() << "\n"
         << "publisher: " << m.publisher << "\n";
    if (m.homepage) out_ << "homepage: " << *m.homepage << "\n";
    out_ << "license: " << registry::family_name(m.license.family) << " " << m.license.variant << "\n";
    for (const auto& ref : m.paper_refs) out_ << "cite: " << ref << "\n";
    out_ << "files: " << manifest.entries.size() << " (" << human_size(manifest.total_size) << ")\n\n"
         << card.readme << "\n";
  }

  void dataset_create() {
    const auto [ns, name] = split_repo(repo_);
    const auto card_path = fs::path(source_) / std::string(registry::kDataCardFile);
    json j;
    try {
      j = json::parse(read_file(card_path));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidDataCard, card_path.string() + ": " + e.what());
    }
    // The repo flag names the dataset; the card supplies everything else.
    if (j.is_object()) {
      j["namespace"] = ns;
      j["name"] = name;
    }
    const auto card = registry::datacard_from_json(j);
    const auto summary = registry::create_dataset(endpoint(), card, source_);
    if (json_) {
      out_ << summary_json(summary).dump(2) << "\n";
    } else {
      out_ << "published " << summary.repo() << ": " << summary.files << " files, " << human_size(summary.total_size)
           << "\n";
    }
  }

  void dataset_serve() {
    auto server = registry::RegistryServer::start(root_, host_, port_);
    out_ << "serving " << root_ << " at " << server->endpoint() << std::endl;
    server->wait();
  }

  void dsdl_validate() {
    const fs::path path = file_;
    const auto text = read_file(path);
    Diagnostics diags;
    auto parsed = dsdl::parse_document(text, path.string());
    diags = parsed.diagnostics;
    std::size_t samples = 0;
    if (parsed.ok() && parsed.document->data) {
      try {
        const auto ds = engine::open_sampleset(path);
        samples = ds->size();
        diags = ds->warnings();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ValidationFailed) throw;
        diags = e.diagnostics();
      }
    } else if (parsed.ok()) {
      const std::vector<fs::path> search{fs::absolute(path).parent_path(), engine::infer_root(path) / "dsdl"};
      auto resolved = dsdl::resolve_imports(*parsed.document, search);
      diags.insert(diags.end(), resolved.diagnostics.begin(), resolved.diagnostics.end());
      if (resolved.ok()) {
        const auto more = dsdl::validate(*resolved.document);
        diags.insert(diags.end(), more.begin(), more.end());
      }
    }
    const bool valid = !has_errors(diags);
    print_diagnostics(err_, diags);
    if (json_) {
      out_ << json{{"file", path.string()}, {"valid", valid}, {"samples", samples}, {"diagnostics", diagnostics_json(diags)}}
                  .dump(2)
           << "\n";
    } else if (valid) {
      out_ << path.string() << ": valid";
      if (parsed.document->data) out_ << " (" << samples << " samples)";
      out_ << "\n";
    }
    if (!valid) status = kInvalid;
  }

  void dsdl_stat() {
    const auto ds = engine::open_sampleset(file_);
    print_diagnostics(err_, ds->warnings());
    const auto stats = engine::compute_stats(*ds);
    print_diagnostics(err_, stats.warnings);
    if (json_) {
      out_ << json{{"samples", stats.samples},
                   {"media_items", stats.media_items},
                   {"extensions", stats.extension_histogram},
                   {"sizes", stats.size_histogram},
                   {"resolutions", stats.resolution_histogram},
                   {"classes", stats.class_frequency},
                   {"warnings", diagnostics_json(stats.warnings)}}
                  .dump(2)
           << "\n";
      return;
    }
    out_ << "samples: " << stats.samples << "\nmedia items: " << stats.media_items << "\n";
    histogram(out_, "file formats", stats.extension_histogram);
    histogram(out_, "file sizes", stats.size_histogram);
    histogram(out_, "resolutions", stats.resolution_histogram);
    histogram(out_, "classes", stats.class_frequency);
  }

  void dsdl_visualize() {
    const auto ds = engine::open_sampleset(file_);
    if (index_ >= ds->size()) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(index_) + " is out of range for " + std::to_string(ds->size()) + " samples");
    }
    engine::RenderOptions opts;
    opts.embed_media = embed_;
    write_file(out_file_, engine::render_sample(*ds, index_, opts));
    out_ << "wrote " << out_file_ << "\n";
  }

  void dsdl_merge() {
    std::vector<engine::DatasetPtr> parts;
    for (const auto& f : files_) parts.push_back(engine::open_sampleset(f));
    const auto merged = engine::concat(parts);
    const auto doc = engine::export_sampleset(*merged, out_dir_, split_);
    report_dataset(*merged, doc);
  }

  void dsdl_convert() {
    std::shared_ptr<const engine::SampleSet> ds;
    const fs::path src = src_;
    if (from_ == "voc") {
      convert::VocSource voc{src / "Annotations", images_.empty() ? src / "JPEGImages" : fs::path(images_), std::nullopt};
      if (!classes_.empty()) voc.class_list = classes_;
      ds = convert::import_voc(voc);
    } else {
      ds = convert::import_coco({src, images_.empty() ? src.parent_path() / "images" : fs::path(images_)});
    }
    print_diagnostics(err_, ds->warnings());
    const auto doc = engine::export_sampleset(*ds, out_dir_, split_.empty() ? "train" : split_);
    report_dataset(*ds, doc);
  }

  void report_dataset(const engine::Dataset& ds, const fs::path& doc) {
    if (json_) {
      out_ << json{{"document", doc.string()},
                   {"samples", ds.size()},
                   {"classes", ds.schema().domain(dsdl::kTemplateDomain) != nullptr
                                   ? json(ds.schema().domain(dsdl::kTemplateDomain)->classes)
                                   : json::array()}}
                  .dump(2)
           << "\n";
    } else {
      out_ << "wrote " << doc.string() << " (" << ds.size() << " samples)\n";
    }
  }

  const Environment& env_;
  std::ostream& out_;
  std::ostream& err_;

  std::string endpoint_;
  std::string repo_;
  std::string target_;
  unsigned jobs_ = 4;
  bool json_ = false;
  std::string query_;
  std::string task_;
  std::string data_type_;
  std::string sort_ = "name";
  std::string source_;
  std::string root_;
  std::string host_ = "127.0.0.1";
  int port_ = 8080;
  std::string file_;
  std::size_t index_ = 0;
  std::string out_file_;
  bool embed_ = false;
  std::vector<std::string> files_;
  std::string out_dir_;
  std::string split_;
  std::string from_;
  std::string src_;
  std::string images_;
  std::vector<std::string> classes_;
};

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UsageError:
    case ErrorCode::IndexOutOfRange:
      return kUsage;
    case ErrorCode::NotFound:
    case ErrorCode::RemoteError:
    case ErrorCode::RemoteDisabled:
    case ErrorCode::UnknownBucket:
    case ErrorCode::IntegrityError:
    case ErrorCode::WriteError:
    case ErrorCode::MediaUnavailable:
    case ErrorCode::DatasetNotFound:
    case ErrorCode::DatasetExists:
    case ErrorCode::StartupError:
      return kIoError;
    default:
      return kInvalid;
  }
}

int run(const std::vector<std::string>& args, const Environment& env, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dataset description toolkit: DSDL documents, conversion, merging and a dataset registry", "odl"};
  Commands commands(env, out, err);
  try {
    commands.setup(app);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return commands.status;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* failing = &app;
    // Point at the deepest subcommand the user reached.
    while (true) {
      const auto subs = failing->get_subcommands();
      if (subs.empty()) break;
      failing = subs.front();
    }
    err << failing->help();
    return kUsage;
  } catch (const Error& e) {
    if (!e.diagnostics().empty()) {
      print_diagnostics(err, e.diagnostics());
    } else {
      err << "error[" << code_name(e.code()) << "]: " << e.what() << "\n";
    }
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace odl::cli
