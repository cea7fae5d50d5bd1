// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/run/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "constat/support/csv.hpp"
#include "constat/support/text.hpp"

#include "json.hpp"

namespace constat::run {

namespace fs = std::filesystem;

namespace {

std::string batch_dir_name(std::size_t index) {
  return "batch_" + std::to_string(index);
}

constexpr std::string_view kMarkerName = ".complete";

bool batch_is_complete(const fs::path& batch_dir) {
  std::error_code ec;
  return fs::exists(batch_dir / kMarkerName, ec);
}

std::string read_file_bytes(const fs::path& path, bool* ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *ok = false;
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  *ok = true;
  return buf.str();
}

// Loads the corpus from either a list file or a corpus directory.
std::vector<dataset::ProjectRef> load_corpus(const RunConfig& config,
                                             std::vector<std::string>* diags) {
  fs::path input(config.input);
  std::error_code ec;
  if (fs::is_directory(input, ec)) {
    std::vector<dataset::ProjectRef> refs;
    std::vector<fs::path> subdirs;
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.is_directory()) subdirs.push_back(entry.path());
    }
    std::sort(subdirs.begin(), subdirs.end());
    for (const fs::path& dir : subdirs) {
      if (auto ref = dataset::make_project_ref(dir.string())) {
        // A corpus subdirectory's identity is its name, not its full path.
        dataset::ProjectRef local = std::move(*ref);
        local.canonical_key = to_lower(dir.filename().string());
        local.project_id = local.canonical_key;
        for (char& c : local.project_id) {
          bool valid = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                       c == '_' || c == '.' || c == '-';
          if (!valid) c = '-';
        }
        refs.push_back(std::move(local));
      }
    }
    return dataset::dedup(refs, nullptr, diags);
  }
  auto refs = dataset::load_project_list(config.input, diags);
  dataset::RepoLookupClient* lookup = nullptr;
  dataset::GithubLookupClient github;
  if (config.online_dedup) {
    lookup = config.lookup_client != nullptr
                 ? config.lookup_client
                 : static_cast<dataset::RepoLookupClient*>(&github);
  }
  return dataset::dedup(refs, lookup, diags);
}

struct FileResult {
  std::vector<analysis::AnalysisRecord> records;
  std::vector<std::string> diagnostics;
  bool analyzed = false;
};

class DiagnosticsLog {
 public:
  explicit DiagnosticsLog(const fs::path& path)
      : out_(path, std::ios::app | std::ios::binary) {}

  void write(const std::string& project_id, const std::string& message) {
    if (!out_) return;
    out_ << project_id << "\t" << message << "\n";
  }

  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
};

// Serialized per-analyzer CSV appenders for one batch directory.
class BatchWriters {
 public:
  BatchWriters(const fs::path& batch_dir,
               const std::vector<const analysis::Analyzer*>& analyzers) {
    fs::create_directories(batch_dir);
    for (const analysis::Analyzer* analyzer : analyzers) {
      auto path = batch_dir / (std::string(analyzer->id()) + ".csv");
      auto out = std::make_unique<std::ofstream>(path, std::ios::binary);
      std::vector<std::string> header = {"project_id", "file_path", "line"};
      for (const std::string& column : analyzer->columns()) {
        header.push_back(column);
      }
      csv_write_row(*out, header);
      writers_[std::string(analyzer->id())] = std::move(out);
    }
  }

  void append(const analysis::AnalysisRecord& record) {
    auto it = writers_.find(record.analyzer_id);
    if (it == writers_.end()) return;
    std::vector<std::string> row = {record.project_id, record.file_path,
                                    std::to_string(record.line)};
    for (const std::string& value : record.values) row.push_back(value);
    csv_write_row(*it->second, row);
  }

  void close() {
    for (auto& [id, out] : writers_) out->close();
  }

 private:
  std::map<std::string, std::unique_ptr<std::ofstream>> writers_;
};

ProjectOutcome analyze_project(
    const dataset::ProjectRef& ref, const std::string& project_root,
    const RunConfig& config,
    const std::vector<const analysis::Analyzer*>& analyzers,
    const frontend::FrontendRegistry& frontends, BatchWriters* writers,
    DiagnosticsLog* log) {
  auto started = std::chrono::steady_clock::now();
  ProjectOutcome outcome;
  outcome.project_id = ref.project_id;

  std::vector<std::string> files =
      enumerate_source_files(project_root, frontends, config.ignore_dirs);

  std::vector<FileResult> results(files.size());
  std::size_t jobs = config.jobs > 0
                         ? config.jobs
                         : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::max<std::size_t>(1, std::min(jobs, files.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t index = next.fetch_add(1);
      if (index >= files.size()) return;
      const std::string& rel_path = files[index];
      FileResult& result = results[index];
      bool ok = false;
      std::string bytes =
          read_file_bytes(fs::path(project_root) / rel_path, &ok);
      if (!ok) {
        result.diagnostics.push_back(rel_path + ": unreadable, skipped");
        continue;
      }
      if (!is_valid_utf8(bytes)) {
        result.diagnostics.push_back(rel_path + ": not valid UTF-8, skipped");
        continue;
      }
      auto parsed = frontends.parse(bytes, rel_path);
      if (!parsed) continue;  // unsupported extension (registry changed?)
      result.diagnostics.insert(result.diagnostics.end(),
                                parsed->diagnostics.begin(),
                                parsed->diagnostics.end());
      auto analysis_out =
          analysis::run_analyzers(*parsed, ref.project_id, analyzers);
      result.records = std::move(analysis_out.records);
      for (const auto& failure : analysis_out.failures) {
        result.diagnostics.push_back("analyzer " + failure.analyzer_id +
                                     " failed on " + failure.file_path + ": " +
                                     failure.message);
      }
      result.analyzed = true;
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }

  bool partial = false;
  for (FileResult& result : results) {
    if (result.analyzed) ++outcome.files_analyzed;
    if (!result.diagnostics.empty()) partial = true;
    for (const auto& record : result.records) writers->append(record);
    for (const auto& message : result.diagnostics) {
      log->write(ref.project_id, message);
    }
  }
  outcome.status = partial ? "parse_partial" : "ok";
  outcome.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return outcome;
}

void append_manifest_entry(const fs::path& manifest_path,
                           const ProjectOutcome& outcome) {
  nlohmann::json entry = {
      {"project_id", outcome.project_id},
      {"status", outcome.status},
      {"files_analyzed", outcome.files_analyzed},
      {"duration_seconds", outcome.duration_seconds},
  };
  std::ofstream out(manifest_path, std::ios::app | std::ios::binary);
  out << entry.dump() << "\n";
}

void write_header_only_outputs(
    const RunConfig& config,
    const std::vector<const analysis::Analyzer*>& analyzers) {
  for (const analysis::Analyzer* analyzer : analyzers) {
    fs::path path =
        fs::path(config.output_dir) / (std::string(analyzer->id()) + ".csv");
    std::ofstream out(path, std::ios::binary);
    std::vector<std::string> header = {"project_id", "file_path", "line"};
    for (const std::string& column : analyzer->columns()) {
      header.push_back(column);
    }
    csv_write_row(out, header);
  }
}

long long row_line_number(const std::vector<std::string>& row) {
  if (row.size() < 3) return 0;
  long long value = 0;
  auto [ptr, ec] = std::from_chars(row[2].data(),
                                   row[2].data() + row[2].size(), value);
  if (ec != std::errc() || ptr != row[2].data() + row[2].size()) return 0;
  return value;
}

bool row_less(const std::vector<std::string>& a,
              const std::vector<std::string>& b) {
  if (a[0] != b[0]) return a[0] < b[0];
  if (a[1] != b[1]) return a[1] < b[1];
  long long la = row_line_number(a);
  long long lb = row_line_number(b);
  if (la != lb) return la < lb;
  for (std::size_t i = 3; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

}  // namespace

std::vector<std::string> enumerate_source_files(
    const std::string& project_root,
    const frontend::FrontendRegistry& registry,
    const std::set<std::string>& ignore_dirs) {
  std::vector<std::string> files;
  fs::path root(project_root);
  std::error_code ec;
  if (!fs::is_directory(root, ec)) return files;
  fs::recursive_directory_iterator it(
      root, fs::directory_options::skip_permission_denied, ec);
  fs::recursive_directory_iterator end;
  while (it != end) {
    const fs::directory_entry& entry = *it;
    if (entry.is_directory(ec)) {
      if (ignore_dirs.count(entry.path().filename().string()) > 0) {
        it.disable_recursion_pending();
      }
    } else if (entry.is_regular_file(ec)) {
      std::string rel = fs::relative(entry.path(), root, ec).generic_string();
      if (!ec && registry.supports(rel)) files.push_back(std::move(rel));
    }
    it.increment(ec);
    if (ec) break;
  }
  std::sort(files.begin(), files.end());
  return files;
}

RunManifest run(const RunConfig& config,
                const analysis::AnalyzerRegistry& analyzers,
                const frontend::FrontendRegistry& frontends) {
  if (config.analyzer_ids.empty()) {
    throw std::invalid_argument("no analyzers selected");
  }
  std::vector<const analysis::Analyzer*> selected;
  for (const std::string& id : config.analyzer_ids) {
    const analysis::Analyzer* analyzer = analyzers.find(id);
    if (analyzer == nullptr) {
      throw std::invalid_argument("unknown analyzer '" + id + "'");
    }
    selected.push_back(analyzer);
  }

  fs::create_directories(config.output_dir);
  fs::path output_dir(config.output_dir);
  DiagnosticsLog log(output_dir / "diagnostics.log");
  fs::path manifest_path = output_dir / "manifest.jsonl";

  RunManifest manifest;
  std::vector<std::string> corpus_diags;
  auto corpus = load_corpus(config, &corpus_diags);
  for (const std::string& message : corpus_diags) log.write("-", message);

  auto batches = dataset::make_batches(corpus, config.batch_size);
  if (batches.empty()) {
    write_header_only_outputs(config, selected);
    return manifest;
  }

  std::string clone_dir = config.clone_dir.empty()
                              ? (output_dir / "projects").string()
                              : config.clone_dir;

  for (const dataset::Batch& batch : batches) {
    fs::path batch_dir = output_dir / batch_dir_name(batch.index);
    if (config.resume && batch_is_complete(batch_dir)) {
      manifest.completed_batches.push_back(batch.index);
      continue;
    }
    std::error_code ec;
    fs::remove_all(batch_dir, ec);  // drop partial output from a prior run

    BatchWriters writers(batch_dir, selected);
    for (const dataset::ProjectRef& ref : batch.projects) {
      std::vector<std::string> diags;
      auto project_root = dataset::materialize(ref, clone_dir, &diags);
      for (const std::string& message : diags) {
        log.write(ref.project_id, message);
      }
      ProjectOutcome outcome;
      if (!project_root) {
        outcome.project_id = ref.project_id;
        outcome.status = "failed";
        ++manifest.failed_projects;
      } else {
        outcome = analyze_project(ref, *project_root, config, selected,
                                  frontends, &writers, &log);
      }
      append_manifest_entry(manifest_path, outcome);
      manifest.entries.push_back(std::move(outcome));
    }
    writers.close();
    log.flush();
    // The marker is written only after every CSV stream is on disk.
    std::ofstream marker(batch_dir / kMarkerName, std::ios::binary);
    marker << "ok\n";
    marker.close();
    manifest.completed_batches.push_back(batch.index);

    if (config.on_batch_complete && !config.on_batch_complete(batch.index)) {
      manifest.aborted = true;
      return manifest;
    }
  }

  merge(config.output_dir);
  return manifest;
}

MergeResult merge(const std::string& output_dir) {
  MergeResult result;
  fs::path root(output_dir);
  std::vector<std::pair<std::size_t, fs::path>> batch_dirs;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw std::runtime_error("output directory not found: " + output_dir);
  }
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    std::string name = entry.path().filename().string();
    if (!starts_with(name, "batch_")) continue;
    std::size_t index = 0;
    auto digits = name.substr(6);
    auto [ptr, parse_ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (parse_ec != std::errc() || ptr != digits.data() + digits.size()) {
      continue;
    }
    if (!batch_is_complete(entry.path())) {
      result.warnings.push_back("batch directory " + name +
                                " has no completion marker; excluded");
      continue;
    }
    batch_dirs.emplace_back(index, entry.path());
  }
  std::sort(batch_dirs.begin(), batch_dirs.end());

  // analyzer id -> (header, rows)
  std::map<std::string, CsvTable> merged;
  for (const auto& [index, dir] : batch_dirs) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      if (entry.path().extension() != ".csv") continue;
      std::string analyzer_id = entry.path().stem().string();
      CsvTable table = csv_read_file(entry.path().string());
      auto [it, inserted] = merged.try_emplace(analyzer_id);
      if (inserted) {
        it->second.header = table.header;
      } else if (it->second.header != table.header) {
        throw std::runtime_error("inconsistent CSV headers for analyzer " +
                                 analyzer_id);
      }
      for (auto& row : table.rows) {
        it->second.rows.push_back(std::move(row));
      }
    }
  }

  for (auto& [analyzer_id, table] : merged) {
    std::sort(table.rows.begin(), table.rows.end(), row_less);
    fs::path out_path = root / (analyzer_id + ".csv");
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + out_path.string());
    }
    csv_write_row(out, table.header);
    for (const auto& row : table.rows) csv_write_row(out, row);
    result.merged_files.push_back(out_path.string());
  }
  return result;
}

}  // namespace constat::run
