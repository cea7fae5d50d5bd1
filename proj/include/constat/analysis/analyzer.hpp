// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_ANALYSIS_ANALYZER_HPP
#define CONSTAT_ANALYSIS_ANALYZER_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "constat/cst/tree.hpp"

namespace constat::analysis {

// One CSV row produced by an analyzer. `values` holds the analyzer-specific
// columns, in the analyzer's declared order.
struct AnalysisRecord {
  std::string analyzer_id;
  std::string project_id;
  std::string file_path;
  std::size_t line = 1;
  std::vector<std::string> values;
};

// A stateless per-file extraction unit. Implementations filter the CST and
// emit records; they must not keep mutable state between files, so the
// framework may analyze distinct files concurrently.
class Analyzer {
 public:
  virtual ~Analyzer() = default;

  // Short lowercase token, [a-z0-9_]+; used in CSV names and CLI selection.
  virtual std::string_view id() const = 0;

  virtual bool supports(cst::SourceLanguage language) const = 0;

  // Analyzer-specific column names, excluding the fixed
  // (project_id, file_path, line) prefix.
  virtual std::vector<std::string> columns() const = 0;

  virtual std::vector<AnalysisRecord> extract(
      const cst::ParsedFile& file, std::string_view project_id) const = 0;
};

// The nearest enclosing language construct of a node.
enum class ContextKind {
  kFor,
  kWhile,
  kIf,
  kWhen,
  kFunction,
  kTopLevel,
};

std::string_view context_kind_name(ContextKind kind);

// Walks the ancestors of `node` and returns the kind of the first one that
// is a for/while (incl. do-while)/if/when statement or a function
// declaration; kTopLevel if the file root is reached first. Lambdas and
// other nodes are transparent.
ContextKind resolve_context(const cst::SyntaxNode& node);

struct AnalyzerFailure {
  std::string analyzer_id;
  std::string file_path;
  std::string message;
};

struct FileAnalysis {
  std::vector<AnalysisRecord> records;
  std::vector<AnalyzerFailure> failures;
};

// Runs every analyzer that supports the file's language over the already
// parsed tree, concatenating records in analyzer order. An analyzer that
// throws contributes a failure entry instead of aborting the others.
FileAnalysis run_analyzers(
    const cst::ParsedFile& file, std::string_view project_id,
    const std::vector<const Analyzer*>& analyzers);

// Registry of analyzers addressable by id, in registration order.
class AnalyzerRegistry {
 public:
  void add(std::unique_ptr<Analyzer> analyzer);
  const Analyzer* find(std::string_view id) const;
  std::vector<const Analyzer*> all() const;
  std::vector<std::string> ids() const;

 private:
  std::vector<std::unique_ptr<Analyzer>> analyzers_;
};

}  // namespace constat::analysis

#endif  // CONSTAT_ANALYSIS_ANALYZER_HPP
