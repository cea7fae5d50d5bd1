// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/frontend/frontend.hpp"

#include "constat/frontend/kotlin.hpp"
#include "constat/frontend/python.hpp"
#include "constat/support/text.hpp"

namespace constat::frontend {

FrontendRegistry FrontendRegistry::builtin() {
  FrontendRegistry registry;
  registry.register_frontend(".kt", cst::SourceLanguage::kKotlin,
                             parse_kotlin);
  registry.register_frontend(".kts", cst::SourceLanguage::kKotlin,
                             parse_kotlin);
  registry.register_frontend(".py", cst::SourceLanguage::kPython,
                             parse_python);
  return registry;
}

void FrontendRegistry::register_frontend(std::string extension,
                                         cst::SourceLanguage language,
                                         ParseFn parse) {
  entries_[std::move(extension)] = Entry{language, std::move(parse)};
}

std::optional<cst::SourceLanguage> FrontendRegistry::language_for(
    std::string_view extension) const {
  auto it = entries_.find(extension);
  if (it == entries_.end()) return std::nullopt;
  return it->second.language;
}

std::optional<cst::ParsedFile> FrontendRegistry::parse(
    std::string_view source, const std::string& path) const {
  auto it = entries_.find(path_extension(path));
  if (it == entries_.end()) return std::nullopt;
  return it->second.parse(source, path);
}

bool FrontendRegistry::supports(const std::string& path) const {
  return entries_.count(path_extension(path)) > 0;
}

std::string path_extension(std::string_view path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string_view name =
      slash == std::string_view::npos ? path : path.substr(slash + 1);
  std::size_t dot = name.find_last_of('.');
  if (dot == std::string_view::npos || dot == 0) return {};
  return to_lower(name.substr(dot));
}

std::optional<cst::SourceLanguage> detect_language(std::string_view path) {
  std::string ext = path_extension(path);
  if (ext == ".kt" || ext == ".kts") return cst::SourceLanguage::kKotlin;
  if (ext == ".py") return cst::SourceLanguage::kPython;
  return std::nullopt;
}

}  // namespace constat::frontend
