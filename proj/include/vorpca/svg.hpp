// Copyright 2026 The vorpca Authors
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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vorpca/voronoi.hpp"

namespace vorpca {

/// Planar arc diagram as SVG. Each cell is drawn as the pair of opposite
/// wedges swept by its lines, filled by candidate set; data points are
/// overlaid with outliers of the given set outlined in black.
inline std::string arc_diagram_svg(const DataMatrix& x, const std::vector<ArcCell>& cells,
                                   const OutlierSet& highlight = {}) {
  constexpr double size = 480.0, c = size / 2, radius = 200.0;
  constexpr double pi = std::numbers::pi;
  std::map<OutlierSet, std::size_t> colour;
  for (const auto& cell : cells) colour.try_emplace(cell.farthest_k, colour.size());

  char buf[256];
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  auto point = [&](double t, double& px, double& py) {
    px = c + radius * std::cos(t);
    py = c - radius * std::sin(t);
  };
  for (const auto& cell : cells) {
    const double hue = 360.0 * static_cast<double>(colour[cell.farthest_k]) /
                       static_cast<double>(std::max<std::size_t>(1, colour.size()));
    std::string label;
    for (auto i : cell.farthest_k) label += (label.empty() ? "" : ",") + std::to_string(i);
    for (double shift : {0.0, pi}) {
      double x0, y0, x1, y1;
      point(cell.theta_lo + shift, x0, y0);
      point(cell.theta_hi + shift, x1, y1);
      std::snprintf(buf, sizeof buf,
                    "<path d=\"M %.3f %.3f L %.3f %.3f A %.3f %.3f 0 %d 0 %.3f %.3f Z\" "
                    "fill=\"hsl(%.1f,65%%,70%%)\" stroke=\"white\" stroke-width=\"0.5\">",
                    c, c, x0, y0, radius, radius, cell.length() > pi ? 1 : 0, x1, y1, hue);
      svg << buf << "<title>{" << label << "}</title></path>\n";
    }
  }
  const double extent = std::max(1e-300, x.values().cwiseAbs().maxCoeff());
  for (Index i = 0; i < x.rows(); ++i) {
    const double px = c + 0.9 * radius * x.row(i)(0) / extent;
    const double py = c - 0.9 * radius * x.row(i)(1) / extent;
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"%s\" stroke=\"black\" "
                  "stroke-width=\"%s\"/>\n",
                  px, py, highlight.contains(i) ? "white" : "black",
                  highlight.contains(i) ? "2" : "0");
    svg << buf;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace vorpca
