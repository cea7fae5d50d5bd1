// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/analysis/builtin_analyzers.hpp"

#include <map>
#include <optional>

#include "constat/eval/const_eval.hpp"

namespace constat::analysis {

namespace {

using cst::NodeKind;
using cst::ParsedFile;
using cst::SyntaxNode;

std::optional<RangeKind> classify_range(const SyntaxNode& node) {
  switch (node.kind()) {
    case NodeKind::kBinaryExpr:
      if (node.aux() == "..") return RangeKind::kDotDot;
      return std::nullopt;
    case NodeKind::kInfixCall:
      if (node.aux() == "until") return RangeKind::kUntil;
      if (node.aux() == "downTo") return RangeKind::kDownTo;
      return std::nullopt;
    case NodeKind::kMemberCall:
      if (node.aux() == "rangeTo") return RangeKind::kRangeTo;
      if (node.aux() == "downTo") return RangeKind::kDownTo;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

AnalysisRecord make_record(const Analyzer& analyzer, std::string_view project,
                           const ParsedFile& file, std::size_t line,
                           std::vector<std::string> values) {
  AnalysisRecord record;
  record.analyzer_id = std::string(analyzer.id());
  record.project_id = std::string(project);
  record.file_path = file.path;
  record.line = line;
  record.values = std::move(values);
  return record;
}

}  // namespace

std::string_view range_kind_name(RangeKind kind) {
  switch (kind) {
    case RangeKind::kDotDot:
      return "DOTDOT";
    case RangeKind::kUntil:
      return "UNTIL";
    case RangeKind::kRangeTo:
      return "RANGE_TO";
    case RangeKind::kDownTo:
      return "DOWN_TO";
  }
  return "?";
}

std::vector<AnalysisRecord> KotlinRangesAnalyzer::extract(
    const ParsedFile& file, std::string_view project_id) const {
  std::vector<AnalysisRecord> out;
  cst::visit_preorder(*file.root, [&](const SyntaxNode& node) {
    auto kind = classify_range(node);
    if (!kind) return;
    ContextKind context = resolve_context(node);
    out.push_back(make_record(
        *this, project_id, file, node.span().start_line,
        {std::string(range_kind_name(*kind)),
         std::string(context_kind_name(context))}));
  });
  return out;
}

std::vector<AnalysisRecord> PythonUnreachableWhileAnalyzer::extract(
    const ParsedFile& file, std::string_view project_id) const {
  std::vector<AnalysisRecord> out;
  cst::visit_preorder(*file.root, [&](const SyntaxNode& node) {
    if (node.kind() != NodeKind::kWhileStmt || node.child_count() < 2) return;
    const SyntaxNode& condition = node.child(0);
    // Degraded conditions are not expressions; they stay unreported.
    if (!cst::is_expression_kind(condition.kind())) return;
    if (!eval::eval_bool(condition, file).is_false()) return;
    const SyntaxNode* body = nullptr;
    for (std::size_t i = 1; i < node.child_count(); ++i) {
      if (node.child(i).kind() == NodeKind::kBlock) {
        body = &node.child(i);
        break;
      }
    }
    if (body == nullptr) return;
    out.push_back(make_record(
        *this, project_id, file, node.span().start_line,
        {std::string(node_text(file, condition)),
         std::string(node_text(file, *body))}));
  });
  return out;
}

KeywordCountAnalyzer::KeywordCountAnalyzer()
    : KeywordCountAnalyzer(std::set<NodeKind>{
          NodeKind::kForStmt, NodeKind::kWhileStmt, NodeKind::kIfStmt,
          NodeKind::kWhenStmt, NodeKind::kFunctionDecl}) {}

KeywordCountAnalyzer::KeywordCountAnalyzer(std::set<NodeKind> counted_kinds)
    : counted_kinds_(std::move(counted_kinds)) {}

std::vector<AnalysisRecord> KeywordCountAnalyzer::extract(
    const ParsedFile& file, std::string_view project_id) const {
  std::map<NodeKind, std::size_t> counts;
  cst::visit_preorder(*file.root, [&](const SyntaxNode& node) {
    if (counted_kinds_.count(node.kind()) > 0) ++counts[node.kind()];
  });
  std::vector<AnalysisRecord> out;
  for (const auto& [kind, count] : counts) {
    out.push_back(make_record(*this, project_id, file, 1,
                              {std::string(node_kind_name(kind)),
                               std::to_string(count)}));
  }
  return out;
}

void register_builtin_analyzers(AnalyzerRegistry* registry) {
  registry->add(std::make_unique<KotlinRangesAnalyzer>());
  registry->add(std::make_unique<PythonUnreachableWhileAnalyzer>());
  registry->add(std::make_unique<KeywordCountAnalyzer>());
}

}  // namespace constat::analysis
