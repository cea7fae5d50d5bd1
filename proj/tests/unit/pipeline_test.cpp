// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "constat/analysis/builtin_analyzers.hpp"
#include "constat/run/pipeline.hpp"
#include "constat/support/csv.hpp"
#include "support/fixtures.hpp"

#include "json.hpp"

using namespace constat;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("constat_pipe_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

run::RunManifest run_on(const std::string& input, const std::string& output,
                        std::vector<std::string> analyzers,
                        std::size_t batch_size = 100, std::size_t jobs = 1) {
  run::RunConfig config;
  config.input = input;
  config.output_dir = output;
  config.analyzer_ids = std::move(analyzers);
  config.batch_size = batch_size;
  config.jobs = jobs;
  analysis::AnalyzerRegistry registry;
  analysis::register_builtin_analyzers(&registry);
  auto frontends = frontend::FrontendRegistry::builtin();
  return run::run(config, registry, frontends);
}

}  // namespace

TEST_CASE("file enumeration prunes ignored directories and sorts") {
  auto dir = fresh_dir("enum");
  fs::create_directories(dir / "src" / "deep");
  fs::create_directories(dir / "build");
  fs::create_directories(dir / ".git");
  std::ofstream(dir / "src" / "b.kt") << "val x = 1\n";
  std::ofstream(dir / "src" / "deep" / "a.py") << "x = 1\n";
  std::ofstream(dir / "build" / "gen.kt") << "val y = 2\n";
  std::ofstream(dir / ".git" / "hook.py") << "x = 3\n";
  std::ofstream(dir / "readme.md") << "notes\n";

  auto registry = frontend::FrontendRegistry::builtin();
  auto files = run::enumerate_source_files(
      dir.string(), registry,
      {".git", "build", "out", "node_modules", ".gradle", "venv",
       "__pycache__"});
  REQUIRE(files.size() == 2);
  CHECK(files[0] == "src/b.kt");
  CHECK(files[1] == "src/deep/a.py");
}

TEST_CASE("a 3-project corpus with batch size 1 checkpoints per project") {
  auto corpus = fresh_dir("corpus3");
  testsupport::write_corpus(
      corpus.string(),
      {{"alpha", {{"a.kt", "val r = 1..2\n"}}},
       {"beta", {{"b.kt", "fun f() { for (i in 3..4) {} }\n"}}},
       {"gamma", {{"c.kt", "val s = \"9..9\"\nval t = 5..6\n"}}}});
  auto out = fresh_dir("out3");
  auto manifest =
      run_on(corpus.string(), out.string(), {"kotlin_ranges"}, 1);

  CHECK(manifest.entries.size() == 3);
  CHECK(manifest.failed_projects == 0);
  for (int b = 0; b < 3; ++b) {
    CHECK(fs::exists(out / ("batch_" + std::to_string(b)) / ".complete"));
  }
  auto merged = csv_read_file((out / "kotlin_ranges.csv").string());
  CHECK(merged.rows.size() == 3);  // one real range per project
}

TEST_CASE("empty corpus still produces merged header-only CSVs") {
  auto corpus = fresh_dir("corpus0");
  auto out = fresh_dir("out0");
  auto manifest = run_on(corpus.string(), out.string(),
                         {"kotlin_ranges", "keyword_count"});
  CHECK(manifest.entries.empty());
  auto ranges = csv_read_file((out / "kotlin_ranges.csv").string());
  CHECK(ranges.rows.empty());
  CHECK(ranges.header ==
        std::vector<std::string>{"project_id", "file_path", "line",
                                 "range_kind", "context_kind"});
}

TEST_CASE("merged output is independent of batch size and jobs") {
  auto corpus = fresh_dir("corpus_inv");
  testsupport::write_corpus(corpus.string(), testsupport::mixed_corpus(5, 4));

  std::string reference;
  for (std::size_t batch_size : {1, 2, 100}) {
    for (std::size_t jobs : {1, 3}) {
      auto out = fresh_dir("out_inv_" + std::to_string(batch_size) + "_" +
                           std::to_string(jobs));
      run_on(corpus.string(), out.string(),
             {"kotlin_ranges", "python_unreachable_while", "keyword_count"},
             batch_size, jobs);
      std::string merged = slurp(out / "kotlin_ranges.csv") + "\x01" +
                           slurp(out / "python_unreachable_while.csv") +
                           "\x01" + slurp(out / "keyword_count.csv");
      if (reference.empty()) {
        reference = merged;
      } else {
        CHECK(reference == merged);
      }
    }
  }
}

TEST_CASE("merge concatenates batches, sorts rows, writes one header") {
  auto out = fresh_dir("merge_two");
  fs::create_directories(out / "batch_0");
  fs::create_directories(out / "batch_1");
  std::ofstream(out / "batch_0" / "kotlin_ranges.csv")
      << "project_id,file_path,line,range_kind,context_kind\n"
      << "zeta,z.kt,9,DOTDOT,FOR\n"
      << "alpha,a.kt,2,UNTIL,IF\n";
  std::ofstream(out / "batch_0" / ".complete") << "ok\n";
  std::ofstream(out / "batch_1" / "kotlin_ranges.csv")
      << "project_id,file_path,line,range_kind,context_kind\n"
      << "alpha,a.kt,10,DOTDOT,FOR\n"
      << "alpha,a.kt,2,DOTDOT,WHEN\n"
      << "mid,m.kt,1,DOWN_TO,WHILE\n";
  std::ofstream(out / "batch_1" / ".complete") << "ok\n";

  auto result = run::merge(out.string());
  REQUIRE(result.merged_files.size() == 1);
  CHECK(result.warnings.empty());
  auto table = csv_read_file((out / "kotlin_ranges.csv").string());
  REQUIRE(table.rows.size() == 5);
  // Sorted by project, path, numeric line, then values.
  CHECK(table.rows[0][0] == "alpha");
  CHECK(table.rows[0][2] == "2");
  CHECK(table.rows[0][3] == "DOTDOT");  // value sort breaks the line tie
  CHECK(table.rows[1][3] == "UNTIL");
  CHECK(table.rows[2][2] == "10");      // 10 sorts after 2 numerically
  CHECK(table.rows[3][0] == "mid");
  CHECK(table.rows[4][0] == "zeta");
}

TEST_CASE("merge excludes batch directories without completion markers") {
  auto out = fresh_dir("merge_incomplete");
  fs::create_directories(out / "batch_0");
  fs::create_directories(out / "batch_1");
  std::ofstream(out / "batch_0" / "keyword_count.csv")
      << "project_id,file_path,line,keyword,count\n"
      << "p,a.py,1,IF_STMT,1\n";
  std::ofstream(out / "batch_0" / ".complete") << "ok\n";
  std::ofstream(out / "batch_1" / "keyword_count.csv")
      << "project_id,file_path,line,keyword,count\n"
      << "q,b.py,1,IF_STMT,9\n";
  // no marker for batch_1

  auto result = run::merge(out.string());
  REQUIRE(result.warnings.size() == 1);
  auto table = csv_read_file((out / "keyword_count.csv").string());
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][0] == "p");
}

TEST_CASE("single batch merge equals the sorted batch file") {
  auto out = fresh_dir("merge_one");
  fs::create_directories(out / "batch_0");
  std::ofstream(out / "batch_0" / "keyword_count.csv")
      << "project_id,file_path,line,keyword,count\n"
      << "b,x.py,1,IF_STMT,2\n"
      << "a,y.py,1,FOR_STMT,3\n";
  std::ofstream(out / "batch_0" / ".complete") << "ok\n";
  run::merge(out.string());
  auto table = csv_read_file((out / "keyword_count.csv").string());
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][0] == "a");
  CHECK(table.rows[1][0] == "b");
}

TEST_CASE("manifest records status, file counts, and durations") {
  auto corpus = fresh_dir("corpus_manifest");
  testsupport::write_corpus(
      corpus.string(),
      {{"clean", {{"ok.py", "x = 1\n"}}},
       {"messy", {{"bad.py", "x = 'unterminated\n"}, {"good.py", "y = 2\n"}}}});
  auto out = fresh_dir("out_manifest");
  auto manifest = run_on(corpus.string(), out.string(), {"keyword_count"});
  REQUIRE(manifest.entries.size() == 2);
  CHECK(manifest.entries[0].project_id == "clean");
  CHECK(manifest.entries[0].status == "ok");
  CHECK(manifest.entries[0].files_analyzed == 1);
  CHECK(manifest.entries[1].project_id == "messy");
  CHECK(manifest.entries[1].status == "parse_partial");
  CHECK(manifest.entries[1].files_analyzed == 2);

  // The JSONL file mirrors the in-memory manifest.
  std::ifstream in(out / "manifest.jsonl");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    auto entry = nlohmann::json::parse(line);
    CHECK(entry.contains("project_id"));
    CHECK(entry.contains("status"));
    CHECK(entry.contains("files_analyzed"));
    CHECK(entry["duration_seconds"].is_number());
    ++lines;
  }
  CHECK(lines == 2);
}

TEST_CASE("undecodable files are skipped with a diagnostic") {
  auto corpus = fresh_dir("corpus_bin");
  fs::create_directories(corpus / "p");
  std::ofstream(corpus / "p" / "ok.py") << "x = 1\n";
  std::ofstream(corpus / "p" / "bin.py", std::ios::binary)
      << "x = 1\n\xFF\xFE broken";
  auto out = fresh_dir("out_bin");
  auto manifest = run_on(corpus.string(), out.string(), {"keyword_count"});
  REQUIRE(manifest.entries.size() == 1);
  CHECK(manifest.entries[0].files_analyzed == 1);  // bin.py skipped
  CHECK(manifest.entries[0].status == "parse_partial");
  auto log = slurp(out / "diagnostics.log");
  CHECK(log.find("not valid UTF-8") != std::string::npos);
}

TEST_CASE("unknown analyzer ids are fatal") {
  auto corpus = fresh_dir("corpus_badid");
  auto out = fresh_dir("out_badid");
  CHECK_THROWS_AS(run_on(corpus.string(), out.string(), {"nope"}),
                  std::invalid_argument);
}

TEST_CASE("resume skips completed batches and reproduces merged bytes") {
  auto corpus = fresh_dir("corpus_resume");
  testsupport::write_corpus(corpus.string(), testsupport::mixed_corpus(4, 3));

  // Uninterrupted reference run.
  auto full = fresh_dir("out_resume_full");
  run_on(corpus.string(), full.string(), {"kotlin_ranges", "keyword_count"},
         2);
  std::string want = slurp(full / "kotlin_ranges.csv") + "\x01" +
                     slurp(full / "keyword_count.csv");

  // Interrupted after the first batch marker.
  auto part = fresh_dir("out_resume_part");
  run::RunConfig config;
  config.input = corpus.string();
  config.output_dir = part.string();
  config.analyzer_ids = {"kotlin_ranges", "keyword_count"};
  config.batch_size = 2;
  config.jobs = 1;
  config.on_batch_complete = [](std::size_t index) { return index != 0; };
  analysis::AnalyzerRegistry registry;
  analysis::register_builtin_analyzers(&registry);
  auto frontends = frontend::FrontendRegistry::builtin();
  auto aborted = run::run(config, registry, frontends);
  CHECK(aborted.aborted);
  CHECK_FALSE(fs::exists(part / "kotlin_ranges.csv"));  // merge never ran

  // Resume and compare.
  config.on_batch_complete = nullptr;
  config.resume = true;
  auto resumed = run::run(config, registry, frontends);
  CHECK_FALSE(resumed.aborted);
  std::string got = slurp(part / "kotlin_ranges.csv") + "\x01" +
                    slurp(part / "keyword_count.csv");
  CHECK(got == want);
}
