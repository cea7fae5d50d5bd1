// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_SUPPORT_CSV_HPP
#define CONSTAT_SUPPORT_CSV_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace constat {

// RFC 4180 CSV, UTF-8, LF line endings. Fields are quoted only when they
// contain a comma, a quote, or a line break, so identical rows always
// serialize to identical bytes.

// Escapes one field for output (adds surrounding quotes when needed).
std::string csv_escape(std::string_view field);

// Writes one row terminated by LF.
void csv_write_row(std::ostream& out, const std::vector<std::string>& fields);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Parses a full CSV document. Quoted fields may contain commas, doubled
// quotes, and line breaks. The first row is the header.
// Throws std::runtime_error on structurally broken input (unterminated
// quote) or when a data row's width differs from the header's.
CsvTable csv_parse(std::string_view text);

// Reads and parses a CSV file. Throws std::runtime_error if unreadable.
CsvTable csv_read_file(const std::string& path);

}  // namespace constat

#endif  // CONSTAT_SUPPORT_CSV_HPP
