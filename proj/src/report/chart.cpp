// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/report/chart.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace constat::report {

namespace {

constexpr int kBarWidth = 56;
constexpr int kBarGap = 14;
constexpr int kGroupGap = 36;
constexpr int kPlotHeight = 300;
constexpr int kMarginLeft = 48;
constexpr int kMarginTop = 56;
constexpr int kMarginBottom = 64;
constexpr int kMarginRight = 32;
constexpr int kLegendWidth = 170;

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                          "#76b7b2", "#edc948", "#b07aa1", "#ff9da7",
                          "#9c755f", "#bab0ac"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

int bar_height(std::uint64_t count, std::uint64_t max_count) {
  if (max_count == 0) return 0;
  return static_cast<int>((count * kPlotHeight + max_count / 2) / max_count);
}

std::string join_keys(const std::vector<std::string>& keys,
                      const char* separator) {
  std::string out;
  for (const std::string& key : keys) {
    if (!out.empty()) out += separator;
    out += key;
  }
  return out;
}

struct BarSpec {
  int x = 0;
  std::uint64_t count = 0;
  std::uint64_t percent_tenths = 0;
  std::string label;       // text under the bar
  std::string color;
};

void render_bars(std::ostringstream& svg, const std::vector<BarSpec>& bars,
                 std::uint64_t max_count) {
  const int baseline = kMarginTop + kPlotHeight;
  for (const BarSpec& bar : bars) {
    int height = bar_height(bar.count, max_count);
    int y = baseline - height;
    svg << "  <rect x=\"" << bar.x << "\" y=\"" << y << "\" width=\""
        << kBarWidth << "\" height=\"" << height << "\" fill=\"" << bar.color
        << "\"/>\n";
    int center = bar.x + kBarWidth / 2;
    svg << "  <text x=\"" << center << "\" y=\"" << (y - 18)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << bar.count
        << "</text>\n";
    svg << "  <text x=\"" << center << "\" y=\"" << (y - 5)
        << "\" text-anchor=\"middle\" font-size=\"11\" fill=\"#555\">"
        << format_percent(bar.percent_tenths) << "%</text>\n";
    svg << "  <text x=\"" << center << "\" y=\"" << (baseline + 16)
        << "\" text-anchor=\"middle\" font-size=\"11\">"
        << xml_escape(bar.label) << "</text>\n";
  }
}

}  // namespace

std::string render_bar_chart_svg(const SummaryTable& table) {
  if (table.rows.empty()) {
    throw std::invalid_argument("cannot chart an empty table");
  }

  std::uint64_t max_count = 0;
  for (const SummaryRow& row : table.rows) {
    max_count = std::max(max_count, row.count);
  }

  const bool grouped = table.group_keys.size() >= 2;
  std::vector<BarSpec> bars;
  std::vector<std::pair<std::string, int>> group_labels;  // label, center x
  std::vector<std::pair<std::string, std::string>> legend;  // label, color

  int x = kMarginLeft;
  if (!grouped) {
    for (const SummaryRow& row : table.rows) {
      BarSpec bar;
      bar.x = x;
      bar.count = row.count;
      bar.percent_tenths = row.percent_tenths;
      bar.label = join_keys(row.keys, "/");
      bar.color = kPalette[0];
      bars.push_back(std::move(bar));
      x += kBarWidth + kBarGap;
    }
    x -= kBarGap;
  } else {
    // Bars grouped by the first key, colored by the second. Groups keep the
    // table's order (count-dominant); series are ordered by name.
    std::vector<std::string> group_order;
    std::map<std::string, std::vector<const SummaryRow*>> groups;
    std::vector<std::string> series;
    for (const SummaryRow& row : table.rows) {
      if (groups.find(row.keys[0]) == groups.end()) {
        group_order.push_back(row.keys[0]);
      }
      groups[row.keys[0]].push_back(&row);
      if (std::find(series.begin(), series.end(), row.keys[1]) ==
          series.end()) {
        series.push_back(row.keys[1]);
      }
    }
    std::sort(series.begin(), series.end());
    for (std::size_t s = 0; s < series.size(); ++s) {
      legend.emplace_back(series[s], kPalette[s % kPaletteSize]);
    }
    for (const std::string& group : group_order) {
      auto& rows = groups[group];
      std::sort(rows.begin(), rows.end(),
                [](const SummaryRow* a, const SummaryRow* b) {
                  return a->keys[1] < b->keys[1];
                });
      int group_start = x;
      for (const SummaryRow* row : rows) {
        std::size_t series_index = static_cast<std::size_t>(
            std::find(series.begin(), series.end(), row->keys[1]) -
            series.begin());
        BarSpec bar;
        bar.x = x;
        bar.count = row->count;
        bar.percent_tenths = row->percent_tenths;
        bar.label = row->keys[1];
        bar.color = kPalette[series_index % kPaletteSize];
        bars.push_back(std::move(bar));
        x += kBarWidth + kBarGap;
      }
      x -= kBarGap;
      group_labels.emplace_back(group, (group_start + x) / 2);
      x += kGroupGap;
    }
    x -= kGroupGap;
  }

  const int width =
      x + kMarginRight + (grouped ? kLegendWidth : 0);
  const int height = kMarginTop + kPlotHeight + kMarginBottom;
  const int baseline = kMarginTop + kPlotHeight;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\""
      << height << "\" fill=\"#ffffff\"/>\n";
  svg << "  <text x=\"" << kMarginLeft << "\" y=\"28\" font-size=\"16\" "
      << "font-weight=\"bold\">" << xml_escape(join_keys(table.group_keys,
                                                         " by "))
      << "</text>\n";
  svg << "  <text x=\"" << kMarginLeft << "\" y=\"44\" font-size=\"12\" "
      << "fill=\"#555\">total " << table.total << "</text>\n";

  render_bars(svg, bars, max_count);

  svg << "  <line x1=\"" << (kMarginLeft - 8) << "\" y1=\"" << baseline
      << "\" x2=\"" << (x + 8) << "\" y2=\"" << baseline
      << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";

  for (const auto& [label, center] : group_labels) {
    svg << "  <text x=\"" << center << "\" y=\"" << (baseline + 36)
        << "\" text-anchor=\"middle\" font-size=\"13\" font-weight=\"bold\">"
        << xml_escape(label) << "</text>\n";
  }

  if (!legend.empty()) {
    int ly = kMarginTop;
    int lx = x + kMarginRight;
    for (const auto& [label, color] : legend) {
      svg << "  <rect x=\"" << lx << "\" y=\"" << (ly - 10)
          << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
      svg << "  <text x=\"" << (lx + 18) << "\" y=\"" << ly
          << "\" font-size=\"12\">" << xml_escape(label) << "</text>\n";
      ly += 20;
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

void emit_chart(const SummaryTable& table, const std::string& path) {
  std::string svg = render_bar_chart_svg(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write chart to " + path);
  out << svg;
  if (!out) throw std::runtime_error("failed writing chart to " + path);
}

}  // namespace constat::report
