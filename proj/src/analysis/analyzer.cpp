// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/analysis/analyzer.hpp"

#include <exception>

namespace constat::analysis {

std::string_view context_kind_name(ContextKind kind) {
  switch (kind) {
    case ContextKind::kFor:
      return "FOR";
    case ContextKind::kWhile:
      return "WHILE";
    case ContextKind::kIf:
      return "IF";
    case ContextKind::kWhen:
      return "WHEN";
    case ContextKind::kFunction:
      return "FUNCTION";
    case ContextKind::kTopLevel:
      return "TOP_LEVEL";
  }
  return "?";
}

ContextKind resolve_context(const cst::SyntaxNode& node) {
  for (const cst::SyntaxNode* p = node.parent(); p != nullptr;
       p = p->parent()) {
    switch (p->kind()) {
      case cst::NodeKind::kForStmt:
        return ContextKind::kFor;
      case cst::NodeKind::kWhileStmt:
      case cst::NodeKind::kDoWhileStmt:
        return ContextKind::kWhile;
      case cst::NodeKind::kIfStmt:
        return ContextKind::kIf;
      case cst::NodeKind::kWhenStmt:
        return ContextKind::kWhen;
      case cst::NodeKind::kFunctionDecl:
        return ContextKind::kFunction;
      default:
        break;  // lambdas and everything else are transparent
    }
  }
  return ContextKind::kTopLevel;
}

FileAnalysis run_analyzers(const cst::ParsedFile& file,
                           std::string_view project_id,
                           const std::vector<const Analyzer*>& analyzers) {
  FileAnalysis out;
  for (const Analyzer* analyzer : analyzers) {
    if (analyzer == nullptr || !analyzer->supports(file.language)) continue;
    try {
      auto records = analyzer->extract(file, project_id);
      out.records.insert(out.records.end(),
                         std::make_move_iterator(records.begin()),
                         std::make_move_iterator(records.end()));
    } catch (const std::exception& e) {
      out.failures.push_back(AnalyzerFailure{std::string(analyzer->id()),
                                             file.path, e.what()});
    } catch (...) {
      out.failures.push_back(AnalyzerFailure{std::string(analyzer->id()),
                                             file.path, "unknown error"});
    }
  }
  return out;
}

void AnalyzerRegistry::add(std::unique_ptr<Analyzer> analyzer) {
  analyzers_.push_back(std::move(analyzer));
}

const Analyzer* AnalyzerRegistry::find(std::string_view id) const {
  for (const auto& analyzer : analyzers_) {
    if (analyzer->id() == id) return analyzer.get();
  }
  return nullptr;
}

std::vector<const Analyzer*> AnalyzerRegistry::all() const {
  std::vector<const Analyzer*> out;
  out.reserve(analyzers_.size());
  for (const auto& analyzer : analyzers_) out.push_back(analyzer.get());
  return out;
}

std::vector<std::string> AnalyzerRegistry::ids() const {
  std::vector<std::string> out;
  out.reserve(analyzers_.size());
  for (const auto& analyzer : analyzers_) {
    out.emplace_back(analyzer->id());
  }
  return out;
}

}  // namespace constat::analysis
