// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "constat/analysis/builtin_analyzers.hpp"
#include "constat/report/chart.hpp"
#include "constat/report/summary.hpp"
#include "constat/run/pipeline.hpp"
#include "constat/support/text.hpp"

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  for (const std::string& piece : constat::split(value, ',')) {
    auto trimmed = constat::trim(piece);
    if (!trimmed.empty()) out.emplace_back(trimmed);
  }
  return out;
}

int run_analyze(const constat::run::RunConfig& config) {
  constat::analysis::AnalyzerRegistry registry;
  constat::analysis::register_builtin_analyzers(&registry);
  auto frontends = constat::frontend::FrontendRegistry::builtin();

  auto manifest = constat::run::run(config, registry, frontends);

  std::size_t ok = 0;
  double total_seconds = 0.0;
  for (const auto& entry : manifest.entries) {
    if (entry.status != "failed") ++ok;
    total_seconds += entry.duration_seconds;
  }
  std::cout << "analyzed " << ok << " project(s), "
            << manifest.failed_projects << " failed";
  if (!manifest.entries.empty()) {
    std::cout << ", " << total_seconds / manifest.entries.size()
              << " s/project";
  }
  std::cout << "\n";
  return manifest.failed_projects == 0 ? 0 : 1;
}

int run_report(const std::string& input, const std::string& group_by,
               const std::string& chart_path, const std::string& table_path) {
  auto table = constat::report::summarize_file(input, split_list(group_by));
  if (!table_path.empty()) {
    constat::report::write_summary_csv(table, table_path);
  } else {
    std::cout << constat::report::render_summary_text(table);
  }
  if (!chart_path.empty()) {
    constat::report::emit_chart(table, chart_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constat: language-construct usage analysis over source corpora"};
  app.require_subcommand(1);

  constat::run::RunConfig config;
  std::string analyzers_arg;
  std::string ignore_arg;

  auto* analyze = app.add_subcommand(
      "analyze", "parse a corpus and run analyzers, batch by batch");
  analyze->add_option("--input", config.input,
                      "project list file or corpus directory")
      ->required();
  analyze->add_option("--output", config.output_dir, "output directory")
      ->required();
  analyze->add_option("--analyzers", analyzers_arg,
                      "comma-separated analyzer ids "
                      "(kotlin_ranges, python_unreachable_while, "
                      "keyword_count)")
      ->required();
  analyze->add_option("--batch-size", config.batch_size,
                      "projects per checkpointed batch")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--jobs", config.jobs,
                      "parallel file workers (0 = machine parallelism)");
  analyze->add_flag("--resume", config.resume,
                    "skip batches that already have completion markers");
  analyze->add_flag("--online-dedup", config.online_dedup,
                    "resolve repository renames via the hosting service");
  analyze->add_option("--ignore", ignore_arg,
                      "comma-separated directory names to skip");

  std::string merge_dir;
  auto* merge = app.add_subcommand(
      "merge", "merge completed batch CSVs into per-analyzer CSVs");
  merge->add_option("--output", merge_dir, "output directory of a run")
      ->required();

  std::string report_input;
  std::string report_group_by;
  std::string report_chart;
  std::string report_table;
  auto* report = app.add_subcommand(
      "report", "aggregate a merged CSV into a table and chart");
  report->add_option("--input", report_input, "merged analyzer CSV")
      ->required();
  report->add_option("--group-by", report_group_by,
                     "comma-separated grouping columns")
      ->required();
  report->add_option("--chart", report_chart, "write an SVG bar chart here");
  report->add_option("--table", report_table, "write the summary CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      config.analyzer_ids = split_list(analyzers_arg);
      if (!ignore_arg.empty()) {
        auto names = split_list(ignore_arg);
        config.ignore_dirs =
            std::set<std::string>(names.begin(), names.end());
      }
      return run_analyze(config);
    }
    if (merge->parsed()) {
      auto result = constat::run::merge(merge_dir);
      for (const auto& warning : result.warnings) {
        std::cerr << "warning: " << warning << "\n";
      }
      for (const auto& file : result.merged_files) {
        std::cout << "wrote " << file << "\n";
      }
      return 0;
    }
    if (report->parsed()) {
      return run_report(report_input, report_group_by, report_chart,
                        report_table);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
