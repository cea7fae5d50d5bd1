// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_SUPPORT_TEXT_HPP
#define CONSTAT_SUPPORT_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace constat {

// Returns true if `bytes` is well-formed UTF-8 (no overlong forms, no
// surrogate code points, no out-of-range scalars).
bool is_valid_utf8(std::string_view bytes);

std::string to_lower(std::string_view s);

// Splits on `sep`, keeping empty pieces.
std::vector<std::string> split(std::string_view s, char sep);

std::string_view trim(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Replaces every occurrence of `from` with `to`.
std::string replace_all(std::string_view s, std::string_view from,
                        std::string_view to);

}  // namespace constat

#endif  // CONSTAT_SUPPORT_TEXT_HPP
