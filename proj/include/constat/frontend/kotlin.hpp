// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_FRONTEND_KOTLIN_HPP
#define CONSTAT_FRONTEND_KOTLIN_HPP

#include <string>
#include <string_view>

#include "constat/cst/tree.hpp"

namespace constat::frontend {

// Parses Kotlin source into the CST. Coverage is the analyzer-facing subset:
// control constructs (for/while/do-while/if/when), function declarations,
// range and infix expressions, member and plain calls, lambdas, literals.
// Anything else degrades to kOther nodes with diagnostics; parsing never
// aborts the file. Comments and string templates never leak tokens.
cst::ParsedFile parse_kotlin(std::string_view source, std::string path);

}  // namespace constat::frontend

#endif  // CONSTAT_FRONTEND_KOTLIN_HPP
