// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared fixture corpora. Expected range occurrences are hand-counted and
// frozen next to each file's source.

#ifndef CONSTAT_TESTS_SUPPORT_FIXTURES_HPP
#define CONSTAT_TESTS_SUPPORT_FIXTURES_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace constat::testsupport {

struct KotlinRangeFixture {
  std::string name;
  std::string content;
  // (range_kind, context_kind) per expected record, e.g. ("DOTDOT", "FOR").
  std::vector<std::pair<std::string, std::string>> expected;
};

// The 20-file Kotlin range corpus: >= 5 occurrences per range kind, spread
// over all six contexts, plus string/comment decoys that must not count.
const std::vector<KotlinRangeFixture>& kotlin_range_fixtures();

// Aggregated hand count over the whole corpus: (kind, context) -> records.
std::map<std::pair<std::string, std::string>, std::size_t>
kotlin_range_expected_totals();

// The three-loop file: `while False`, `while 2+2 != 4`, `while x`.
std::string python_fig2_source();

// 50 Python files whose while conditions are all satisfiable or unknown.
std::vector<std::pair<std::string, std::string>> python_satisfiable_corpus();

// Writes each (name, content) under dir (creating parents).
void write_files(const std::string& dir,
                 const std::vector<std::pair<std::string, std::string>>& files);

// Writes a corpus directory: one subdirectory per project.
void write_corpus(
    const std::string& corpus_dir,
    const std::map<std::string,
                   std::vector<std::pair<std::string, std::string>>>& projects);

// A mixed Kotlin/Python corpus with `projects` projects and >= files_per
// files each, for throughput and batching tests.
std::map<std::string, std::vector<std::pair<std::string, std::string>>>
mixed_corpus(std::size_t projects, std::size_t files_per);

}  // namespace constat::testsupport

#endif  // CONSTAT_TESTS_SUPPORT_FIXTURES_HPP
