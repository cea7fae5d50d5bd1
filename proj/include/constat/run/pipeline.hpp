// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_RUN_PIPELINE_HPP
#define CONSTAT_RUN_PIPELINE_HPP

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "constat/analysis/analyzer.hpp"
#include "constat/dataset/projects.hpp"
#include "constat/frontend/frontend.hpp"

namespace constat::run {

struct RunConfig {
  // Project-list file or corpus directory (every immediate subdirectory is
  // one local project).
  std::string input;
  std::string output_dir;
  std::vector<std::string> analyzer_ids;
  std::size_t batch_size = 100;
  std::size_t jobs = 0;  // 0 = machine parallelism
  bool resume = false;
  bool online_dedup = false;
  std::set<std::string> ignore_dirs = {".git",         "build",
                                       "out",          "node_modules",
                                       ".gradle",      "venv",
                                       "__pycache__"};
  // Directory remote projects are cloned into; defaults under output_dir.
  std::string clone_dir;

  // Overrides the lookup service used by online dedup (tests inject stubs).
  dataset::RepoLookupClient* lookup_client = nullptr;

  // Called after each batch's completion marker is written; returning false
  // stops the run there (simulates an external interruption). The partial
  // output is valid for --resume.
  std::function<bool(std::size_t batch_index)> on_batch_complete;
};

struct ProjectOutcome {
  std::string project_id;
  std::string status;  // "ok" | "parse_partial" | "failed"
  std::size_t files_analyzed = 0;
  double duration_seconds = 0.0;
};

struct RunManifest {
  std::vector<ProjectOutcome> entries;
  std::vector<std::size_t> completed_batches;
  std::size_t failed_projects = 0;
  bool aborted = false;
};

struct MergeResult {
  std::vector<std::string> merged_files;
  std::vector<std::string> warnings;
};

// Lists the analyzable files under `project_root`: supported extensions
// only, ignore-listed directory names pruned, project-relative paths with
// '/' separators, sorted.
std::vector<std::string> enumerate_source_files(
    const std::string& project_root, const frontend::FrontendRegistry& registry,
    const std::set<std::string>& ignore_dirs);

// Executes the full pipeline: loads and dedups the corpus, walks batches,
// parses and analyzes each project's files (files within a project run on
// up to `jobs` workers), appends per-batch CSVs, writes each batch's
// completion marker last, and merges batch outputs at the end. Per-project
// failures are recorded and the run continues. With `resume`, batches that
// already have completion markers are skipped. Appends one JSON object per
// project to output_dir/manifest.jsonl and skip/parse diagnostics to
// output_dir/diagnostics.log.
RunManifest run(const RunConfig& config,
                const analysis::AnalyzerRegistry& analyzers,
                const frontend::FrontendRegistry& frontends);

// Concatenates completed batch CSVs per analyzer (header once), sorts rows
// canonically by (project_id, file_path, line, values), and writes
// output_dir/<analyzer_id>.csv. Batch directories without a completion
// marker are excluded with a warning.
MergeResult merge(const std::string& output_dir);

}  // namespace constat::run

#endif  // CONSTAT_RUN_PIPELINE_HPP
