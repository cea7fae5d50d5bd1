// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_ANALYSIS_BUILTIN_ANALYZERS_HPP
#define CONSTAT_ANALYSIS_BUILTIN_ANALYZERS_HPP

#include <set>

#include "constat/analysis/analyzer.hpp"

namespace constat::analysis {

// The four surface syntaxes of Kotlin numeric ranges.
enum class RangeKind {
  kDotDot,   // X..Y
  kUntil,    // X until Y
  kRangeTo,  // X.rangeTo(Y)
  kDownTo,   // X downTo Y, X.downTo(Y)
};

std::string_view range_kind_name(RangeKind kind);

// `kotlin_ranges`: one record per range occurrence with columns
// [range_kind, context_kind].
class KotlinRangesAnalyzer final : public Analyzer {
 public:
  std::string_view id() const override { return "kotlin_ranges"; }
  bool supports(cst::SourceLanguage language) const override {
    return language == cst::SourceLanguage::kKotlin;
  }
  std::vector<std::string> columns() const override {
    return {"range_kind", "context_kind"};
  }
  std::vector<AnalysisRecord> extract(
      const cst::ParsedFile& file, std::string_view project_id) const override;
};

// `python_unreachable_while`: one record per while loop whose condition
// constant-evaluates to false, with columns [condition_text, body_text].
class PythonUnreachableWhileAnalyzer final : public Analyzer {
 public:
  std::string_view id() const override { return "python_unreachable_while"; }
  bool supports(cst::SourceLanguage language) const override {
    return language == cst::SourceLanguage::kPython;
  }
  std::vector<std::string> columns() const override {
    return {"condition_text", "body_text"};
  }
  std::vector<AnalysisRecord> extract(
      const cst::ParsedFile& file, std::string_view project_id) const override;
};

// `keyword_count`: per-file counts of configured construct kinds, columns
// [keyword, count]. Counts are CST-based, so matches inside strings and
// comments never contribute.
class KeywordCountAnalyzer final : public Analyzer {
 public:
  KeywordCountAnalyzer();
  explicit KeywordCountAnalyzer(std::set<cst::NodeKind> counted_kinds);

  std::string_view id() const override { return "keyword_count"; }
  bool supports(cst::SourceLanguage) const override { return true; }
  std::vector<std::string> columns() const override {
    return {"keyword", "count"};
  }
  std::vector<AnalysisRecord> extract(
      const cst::ParsedFile& file, std::string_view project_id) const override;

 private:
  std::set<cst::NodeKind> counted_kinds_;
};

// Adds the three built-in analyzers, in the order above.
void register_builtin_analyzers(AnalyzerRegistry* registry);

}  // namespace constat::analysis

#endif  // CONSTAT_ANALYSIS_BUILTIN_ANALYZERS_HPP
