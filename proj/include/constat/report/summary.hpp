// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_REPORT_SUMMARY_HPP
#define CONSTAT_REPORT_SUMMARY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "constat/support/csv.hpp"

namespace constat::report {

struct SummaryRow {
  std::vector<std::string> keys;
  std::uint64_t count = 0;
  // 100*count/total in tenths of a percent, rounded half-up: 522 => "52.2".
  std::uint64_t percent_tenths = 0;
};

// Grouped counts over a merged analyzer CSV. Row counts sum to the CSV's
// data-row total; rows are ordered by count descending, then keys ascending.
struct SummaryTable {
  std::vector<std::string> group_keys;
  std::vector<SummaryRow> rows;
  std::uint64_t total = 0;
};

// "52.2", always one decimal.
std::string format_percent(std::uint64_t percent_tenths);

// Exact integer round-half-up of 100*count/total to one decimal, in tenths.
std::uint64_t percent_tenths(std::uint64_t count, std::uint64_t total);

// Groups the table's rows by the named columns. Throws std::invalid_argument
// naming the available columns when a group-by column does not exist.
SummaryTable summarize(const CsvTable& csv,
                       const std::vector<std::string>& group_by);

SummaryTable summarize_file(const std::string& csv_path,
                            const std::vector<std::string>& group_by);

// Writes the summary as CSV: group columns + count + percent.
void write_summary_csv(const SummaryTable& table, const std::string& path);

// Plain-text rendering for terminal output.
std::string render_summary_text(const SummaryTable& table);

}  // namespace constat::report

#endif  // CONSTAT_REPORT_SUMMARY_HPP
