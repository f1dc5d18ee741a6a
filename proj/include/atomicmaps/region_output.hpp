// Copyright 2026 The atomicmaps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// CSV and SVG renderings of a RegionReport. The SVG is computed from the CSV
// content alone, so render_region_svg(parse_region_csv(csv)) matches
// render_region_svg(report) whenever csv = format_region_csv(report).

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "atomicmaps/detect.hpp"
#include "atomicmaps/matrix_io.hpp"

namespace atomicmaps {

struct RegionRow {
  double x;
  double y;
  std::string label;
};

struct RegionTable {
  std::vector<std::string> metadata;  // lines after "# "
  std::vector<RegionRow> rows;
};

inline std::string format_region_csv(const RegionReport& report) {
  std::string out;
  out += "# x+y=1.5\n";
  out += "# x+y=1.75\n";
  out += "# d=" + std::to_string(report.d) + " grid=" + std::to_string(report.grid) + "\n";
  out += "x,y,label\n";
  for (const RegionPoint& p : report.points) {
    out += format_double(p.x);
    out += ',';
    out += format_double(p.y);
    out += ',';
    out += to_string(p.conclusion);
    out += '\n';
  }
  return out;
}

inline RegionTable parse_region_csv(const std::string& csv) {
  RegionTable table;
  std::istringstream in(csv);
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      table.metadata.push_back(line.substr(2));
      continue;
    }
    if (!header_seen) {
      if (line != "x,y,label") throw ParseError("expected header 'x,y,label'", lineno, 1);
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw ParseError("expected 'x,y,label'", lineno, 1);
    detail::Token tok{{}, lineno, 1};
    table.rows.push_back({detail::parse_number(std::string_view(line).substr(0, c1), tok),
                          detail::parse_number(std::string_view(line).substr(c1 + 1, c2 - c1 - 1), tok),
                          line.substr(c2 + 1)});
  }
  return table;
}

/// Unit square with one cell per grid point: black where atomicity is
/// certified, gray where only indecomposability is, and the two boundary
/// lines x + y = 3/2 and x + y = 7/4 dashed.
inline std::string render_region_svg(const RegionTable& table) {
  constexpr double kSize = 400.0;
  constexpr double kMargin = 20.0;
  std::vector<double> xs;
  for (const RegionRow& r : table.rows) xs.push_back(r.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const double cell = xs.size() > 1 ? 1.0 / static_cast<double>(xs.size() - 1) : 1.0;

  auto px = [&](double x) { return kMargin + x * kSize; };
  auto py = [&](double y) { return kMargin + (1.0 - y) * kSize; };
  char buf[256];
  std::string svg;
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\">\n",
                kSize + 2 * kMargin, kSize + 2 * kMargin);
  svg += buf;
  for (const RegionRow& r : table.rows) {
    const char* fill = nullptr;
    if (r.label == "atomic") fill = "#000000";
    else if (r.label == "indecomposable") fill = "#999999";
    if (!fill) continue;
    // Cells are centred on grid points and clipped to the square.
    const double x0 = std::max(0.0, r.x - cell / 2), x1 = std::min(1.0, r.x + cell / 2);
    const double y0 = std::max(0.0, r.y - cell / 2), y1 = std::min(1.0, r.y + cell / 2);
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"%s\"/>\n",
                  px(x0), py(y1), (x1 - x0) * kSize, (y1 - y0) * kSize, fill);
    svg += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"#000000\"/>\n",
                kMargin, kMargin, kSize, kSize);
  svg += buf;
  for (double s : {1.5, 1.75}) {
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"#cc0000\" "
                  "stroke-dasharray=\"4,3\"/>\n",
                  px(s - 1.0), py(1.0), px(1.0), py(s - 1.0));
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

inline std::string render_region_svg(const RegionReport& report) {
  return render_region_svg(parse_region_csv(format_region_csv(report)));
}

}  // namespace atomicmaps
