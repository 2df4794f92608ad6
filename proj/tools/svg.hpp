// Copyright 2026 The stackpmf Authors. All Rights Reserved.
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
// =============================================================================
#ifndef STACKPMF_TOOLS_SVG_HPP_
#define STACKPMF_TOOLS_SVG_HPP_

// Minimal SVG charts. CSV is the canonical artifact; these are previews.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stackpmf/format.hpp"

namespace stackpmf::svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

class Canvas {
 public:
  Canvas(double xmin, double xmax, double ymin, double ymax) {
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    x0_ = xmin;
    x1_ = xmax;
    y0_ = ymin;
    y1_ = ymax;
    body_ << "<line x1='" << kLeft << "' y1='" << kHeight - kBottom << "' x2='" << kWidth - kRight
          << "' y2='" << kHeight - kBottom << "' stroke='black'/>\n";
    body_ << "<line x1='" << kLeft << "' y1='" << kTop << "' x2='" << kLeft << "' y2='"
          << kHeight - kBottom << "' stroke='black'/>\n";
    text(kLeft, kHeight - kBottom + 14, format_double(xmin));
    text(kWidth - kRight - 30, kHeight - kBottom + 14, format_double(xmax));
    text(2, kHeight - kBottom, format_double(ymin));
    text(2, kTop + 4, format_double(ymax));
  }

  double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom);
  }

  void line(double xa, double ya, double xb, double yb, const std::string& color) {
    body_ << "<line x1='" << px(xa) << "' y1='" << py(ya) << "' x2='" << px(xb) << "' y2='"
          << py(yb) << "' stroke='" << color << "'/>\n";
  }
  void dot(double x, double y, const std::string& color) {
    body_ << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='2' fill='" << color << "'/>\n";
  }
  void rect(double xa, double ya, double xb, double yb) {
    body_ << "<rect x='" << std::min(px(xa), px(xb)) << "' y='" << std::min(py(ya), py(yb))
          << "' width='" << std::abs(px(xb) - px(xa)) << "' height='"
          << std::abs(py(yb) - py(ya)) << "' fill='none' stroke='black'/>\n";
  }
  void text(double x, double y, const std::string& s) {
    body_ << "<text x='" << x << "' y='" << y << "' font-size='10'>" << s << "</text>\n";
  }
  void label(double x, double y, const std::string& s) { text(px(x), py(y), s); }

  void save(const std::string& path) const {
    std::ofstream out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
        << "'>\n"
        << body_.str() << "</svg>\n";
  }

 private:
  static constexpr double kWidth = 640, kHeight = 400, kLeft = 50, kRight = 20, kTop = 20,
                          kBottom = 30;
  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

inline const std::string& color(std::size_t i) {
  static const std::vector<std::string> palette{"#1f77b4", "#d62728", "#2ca02c",
                                                "#9467bd", "#ff7f0e", "#8c564b"};
  return palette[i % palette.size()];
}

inline void line_chart(const std::string& path, const std::vector<Series>& series) {
  double xmin = std::numeric_limits<double>::max(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmin > xmax) xmin = xmax = ymin = ymax = 0.0;
  Canvas c(xmin, xmax, ymin, ymax);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& pts = series[i].points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      c.dot(pts[k].first, pts[k].second, color(i));
      if (k > 0) c.line(pts[k - 1].first, pts[k - 1].second, pts[k].first, pts[k].second, color(i));
    }
    c.text(560, 20 + 12.0 * static_cast<double>(i), series[i].label);
  }
  c.save(path);
}

inline void scatter(const std::string& path, const std::vector<Series>& series) {
  double xmin = std::numeric_limits<double>::max(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmin > xmax) xmin = xmax = ymin = ymax = 0.0;
  Canvas c(xmin, xmax, ymin, ymax);
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (const auto& [x, y] : series[i].points) c.dot(x, y, color(i));
    c.text(560, 20 + 12.0 * static_cast<double>(i), series[i].label);
  }
  c.save(path);
}

// One box (quartiles, whiskers at min/max) per group.
inline void boxplot(const std::string& path,
                    const std::vector<std::pair<std::string, std::vector<double>>>& groups) {
  double ymin = std::numeric_limits<double>::max(), ymax = -ymin;
  for (const auto& g : groups) {
    for (double v : g.second) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (ymin > ymax) ymin = ymax = 0.0;
  Canvas c(0.0, static_cast<double>(groups.size()) + 1.0, ymin, ymax);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    std::vector<double> v = groups[i].second;
    if (v.empty()) continue;
    std::sort(v.begin(), v.end());
    const auto q = [&v](double f) { return v[static_cast<std::size_t>(f * (v.size() - 1))]; };
    const double x = static_cast<double>(i) + 1.0;
    c.rect(x - 0.3, q(0.25), x + 0.3, q(0.75));
    c.line(x - 0.3, q(0.5), x + 0.3, q(0.5), "black");
    c.line(x, v.front(), x, q(0.25), "black");
    c.line(x, q(0.75), x, v.back(), "black");
    c.label(x - 0.2, ymin, groups[i].first);
  }
  c.save(path);
}

}  // namespace stackpmf::svg

#endif  // STACKPMF_TOOLS_SVG_HPP_
