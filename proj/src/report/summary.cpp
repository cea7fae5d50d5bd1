// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/report/summary.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace constat::report {

std::uint64_t percent_tenths(std::uint64_t count, std::uint64_t total) {
  if (total == 0) return 0;
  // round-half-up(1000*count/total) without floating point
  return (2000 * count + total) / (2 * total);
}

std::string format_percent(std::uint64_t tenths) {
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

SummaryTable summarize(const CsvTable& csv,
                       const std::vector<std::string>& group_by) {
  std::vector<std::size_t> indices;
  for (const std::string& column : group_by) {
    auto it = std::find(csv.header.begin(), csv.header.end(), column);
    if (it == csv.header.end()) {
      std::string available;
      for (const std::string& name : csv.header) {
        if (!available.empty()) available += ", ";
        available += name;
      }
      throw std::invalid_argument("unknown column '" + column +
                                  "'; available columns: " + available);
    }
    indices.push_back(
        static_cast<std::size_t>(std::distance(csv.header.begin(), it)));
  }

  std::map<std::vector<std::string>, std::uint64_t> counts;
  for (const auto& row : csv.rows) {
    std::vector<std::string> key;
    key.reserve(indices.size());
    for (std::size_t index : indices) key.push_back(row[index]);
    ++counts[key];
  }

  SummaryTable table;
  table.group_keys = group_by;
  table.total = csv.rows.size();
  for (const auto& [key, count] : counts) {
    SummaryRow row;
    row.keys = key;
    row.count = count;
    row.percent_tenths = percent_tenths(count, table.total);
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const SummaryRow& a, const SummaryRow& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.keys < b.keys;
            });
  return table;
}

SummaryTable summarize_file(const std::string& csv_path,
                            const std::vector<std::string>& group_by) {
  return summarize(csv_read_file(csv_path), group_by);
}

void write_summary_csv(const SummaryTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  std::vector<std::string> header = table.group_keys;
  header.push_back("count");
  header.push_back("percent");
  csv_write_row(out, header);
  for (const SummaryRow& row : table.rows) {
    std::vector<std::string> fields = row.keys;
    fields.push_back(std::to_string(row.count));
    fields.push_back(format_percent(row.percent_tenths));
    csv_write_row(out, fields);
  }
}

std::string render_summary_text(const SummaryTable& table) {
  std::ostringstream out;
  for (const std::string& key : table.group_keys) out << key << "\t";
  out << "count\tpercent\n";
  for (const SummaryRow& row : table.rows) {
    for (const std::string& value : row.keys) out << value << "\t";
    out << row.count << "\t" << format_percent(row.percent_tenths) << "\n";
  }
  out << "total\t" << table.total << "\n";
  return out.str();
}

}  // namespace constat::report
