// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_FRONTEND_FRONTEND_HPP
#define CONSTAT_FRONTEND_FRONTEND_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "constat/cst/tree.hpp"

namespace constat::frontend {

using ParseFn =
    std::function<cst::ParsedFile(std::string_view source, std::string path)>;

// Maps file extensions to parse functions. Lookup is total: an unknown
// extension means "unsupported", never an error, so corpus walks can skip
// freely.
class FrontendRegistry {
 public:
  // Returns the registry with the built-in Kotlin (.kt, .kts) and Python
  // (.py) frontends.
  static FrontendRegistry builtin();

  // `extension` includes the leading dot. Replaces any previous entry for
  // the same extension.
  void register_frontend(std::string extension, cst::SourceLanguage language,
                         ParseFn parse);

  std::optional<cst::SourceLanguage> language_for(
      std::string_view extension) const;

  // Parses `source` as the language registered for `path`'s extension.
  // Returns nullopt for unsupported extensions.
  std::optional<cst::ParsedFile> parse(std::string_view source,
                                       const std::string& path) const;

  bool supports(const std::string& path) const;

 private:
  struct Entry {
    cst::SourceLanguage language;
    ParseFn parse;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

// ".kt"/".kts" map to Kotlin, ".py" to Python, anything else to nullopt.
std::optional<cst::SourceLanguage> detect_language(std::string_view path);

// Lowercased extension of `path` including the dot; empty if none.
std::string path_extension(std::string_view path);

}  // namespace constat::frontend

#endif  // CONSTAT_FRONTEND_FRONTEND_HPP
