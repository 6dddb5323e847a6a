// Copyright 2026 The holosim Authors
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

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "holosim/sweeps.hpp"

namespace holosim {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<ResultRow>& rows, const std::string& title,
                       const std::string& x_label, bool log_x) {
  if (rows.empty()) throw InvalidArgument("no rows to plot");
  const auto xmap = [log_x](double x) { return log_x ? std::log10(x) : x; };

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = 1.0;
  for (const auto& r : rows) {
    x_lo = std::min(x_lo, xmap(r.sweep_value));
    x_hi = std::max(x_hi, xmap(r.sweep_value));
    if (std::isfinite(r.f_min)) y_lo = std::min(y_lo, r.f_min);
  }
  if (!(x_hi > x_lo)) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  y_lo = std::clamp(std::floor(y_lo * 10.0) / 10.0, 0.0, 0.9);
  const double y_hi = 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (xmap(x) - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{3}</text>\n",
      kWidth, kHeight, kWidth / 2, escape(title));

  // Axes and ticks.
  svg += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n", kLeft,
      kTop, plot_w, plot_h);
  for (int i = 0; i <= 5; ++i) {
    const double y = y_lo + (y_hi - y_lo) * i / 5.0;
    svg += fmt::format(
        "<line x1=\"{0}\" x2=\"{1}\" y1=\"{2:.2f}\" y2=\"{2:.2f}\" stroke=\"#ddd\"/>\n"
        "<text x=\"{3}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:.2f}</text>\n",
        kLeft, kLeft + plot_w, py(y), kLeft - 6, py(y) + 4, y);
  }
  std::vector<double> ticks;
  if (log_x) {
    for (double d = std::ceil(x_lo - 1e-12); d <= x_hi + 1e-12; d += 1.0) ticks.push_back(d);
  } else {
    for (int i = 0; i <= 5; ++i) ticks.push_back(x_lo + (x_hi - x_lo) * i / 5.0);
  }
  for (double t : ticks) {
    const double x = kLeft + (t - x_lo) / (x_hi - x_lo) * plot_w;
    const std::string label = log_x ? fmt::format("1e{}", static_cast<int>(t)) : fmt::format("{:.4g}", t);
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" x2=\"{0:.2f}\" y1=\"{1}\" y2=\"{2}\" stroke=\"#ddd\"/>\n"
        "<text x=\"{0:.2f}\" y=\"{3}\" text-anchor=\"middle\">{4}</text>\n",
        x, kTop, kTop + plot_h, kTop + plot_h + 16, label);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + plot_w / 2, kHeight - 12, escape(x_label));
  svg += fmt::format(
      "<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">"
      "fidelity</text>\n",
      kTop + plot_h / 2);

  // Series; failed points break the line.
  const auto series = [&](double ResultRow::*field, const char* color) {
    std::string path;
    bool pen_down = false;
    for (const auto& r : rows) {
      const double y = r.*field;
      if (!std::isfinite(y)) {
        pen_down = false;
        continue;
      }
      path += fmt::format("{}{:.2f},{:.2f} ", pen_down ? "L" : "M", px(r.sweep_value),
                          py(std::max(y, y_lo)));
      pen_down = true;
    }
    return fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", path,
                       color);
  };
  svg += series(&ResultRow::f_max, "red");
  svg += series(&ResultRow::f_avg, "black");
  svg += series(&ResultRow::f_min, "blue");

  const char* names[] = {"max", "avg", "min"};
  const char* colors[] = {"red", "black", "blue"};
  for (int i = 0; i < 3; ++i) {
    const double x = kLeft + plot_w - 150 + 50 * i;
    svg += fmt::format(
        "<line x1=\"{0}\" x2=\"{1}\" y1=\"{2}\" y2=\"{2}\" stroke=\"{3}\" stroke-width=\"2\"/>"
        "<text x=\"{4}\" y=\"{5}\">{6}</text>\n",
        x, x + 16, kTop + plot_h - 12, colors[i], x + 20, kTop + plot_h - 8, names[i]);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace holosim
