// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_REPORT_CHART_HPP
#define CONSTAT_REPORT_CHART_HPP

#include <string>

#include "constat/report/summary.hpp"

namespace constat::report {

// Renders the table as a self-contained SVG bar chart: one bar per row,
// grouped bars (with a legend) when the table has two group keys. Output
// bytes are a pure function of the table. Throws std::invalid_argument for
// an empty table.
std::string render_bar_chart_svg(const SummaryTable& table);

// render_bar_chart_svg + write. Throws std::runtime_error when the path is
// unwritable.
void emit_chart(const SummaryTable& table, const std::string& path);

}  // namespace constat::report

#endif  // CONSTAT_REPORT_CHART_HPP
