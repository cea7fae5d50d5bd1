// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_FRONTEND_PYTHON_HPP
#define CONSTAT_FRONTEND_PYTHON_HPP

#include <string>
#include <string_view>

#include "constat/cst/tree.hpp"

namespace constat::frontend {

// Parses Python 3 source into the CST. Indentation-delimited suites become
// kBlock nodes; while/if/for/def are distinguished, other compound
// statements (class, try, with, ...) become kOther nodes whose suites are
// still parsed, so nested constructs stay visible. Malformed regions degrade
// to kOther with diagnostics; parsing never aborts the file.
cst::ParsedFile parse_python(std::string_view source, std::string path);

}  // namespace constat::frontend

#endif  // CONSTAT_FRONTEND_PYTHON_HPP
