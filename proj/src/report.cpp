// Copyright 2026 The zipfvocab Authors
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

#include "zipfvocab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include "zipfvocab/io.hpp"

namespace zipfvocab {

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> ParseCsvRecord(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string RankFrequencyCsv(const RankFrequencyCurve& curve) {
  std::string out = "rank,token,frequency\n";
  for (const auto& p : curve.points) {
    out += std::to_string(p.rank);
    out += ',';
    out += CsvEscape(p.token);
    out += ',';
    out += std::to_string(p.frequency);
    out += '\n';
  }
  return out;
}

std::string FitReport(const ZipfFit& fit) {
  std::string out;
  out += "slope=" + io::FormatDouble(fit.slope) + "\n";
  out += "intercept=" + io::FormatDouble(fit.intercept) + "\n";
  out += "r_squared=" + io::FormatDouble(fit.r_squared) + "\n";
  out += "n_points=" + std::to_string(fit.n_points) + "\n";
  out += std::string("degenerate=") + (fit.degenerate ? "true" : "false") + "\n";
  return out;
}

namespace {

std::string XmlEscape(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string PowerLabel(int exponent) {
  if (exponent >= 0 && exponent <= 4) {
    return std::to_string(static_cast<long long>(std::llround(std::pow(10.0, exponent))));
  }
  return "1e" + std::to_string(exponent);
}

}  // namespace

std::string RenderLogLogSvg(const RankFrequencyCurve& curve, const ZipfFit& fit,
                            std::string_view title) {
  constexpr double kWidth = 640, kHeight = 480;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_max = std::log10(static_cast<double>(std::max<std::size_t>(curve.size(), 2)));
  double y_min = 0.0, y_max = 1.0;
  if (!curve.points.empty()) {
    y_max = std::log10(static_cast<double>(curve.points.front().frequency));
    y_min = std::log10(static_cast<double>(curve.points.back().frequency));
  }
  y_min = std::floor(y_min);
  y_max = std::max(std::ceil(y_max), y_min + 1.0);
  x_max = std::max(std::ceil(x_max), 1.0);

  auto px = [&](double lx) { return kLeft + lx / x_max * plot_w; };
  auto py = [&](double ly) { return kTop + (y_max - ly) / (y_max - y_min) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         XmlEscape(title) + "</text>\n";
  svg += "<rect x=\"" + Fixed(kLeft) + "\" y=\"" + Fixed(kTop) + "\" width=\"" +
         Fixed(plot_w) + "\" height=\"" + Fixed(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int e = 0; e <= static_cast<int>(x_max); ++e) {
    const double x = px(e);
    svg += "<line x1=\"" + Fixed(x) + "\" y1=\"" + Fixed(kTop + plot_h) + "\" x2=\"" +
           Fixed(x) + "\" y2=\"" + Fixed(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + Fixed(x) + "\" y=\"" + Fixed(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + PowerLabel(e) + "</text>\n";
  }
  for (int e = static_cast<int>(y_min); e <= static_cast<int>(y_max); ++e) {
    const double y = py(e);
    svg += "<line x1=\"" + Fixed(kLeft - 5) + "\" y1=\"" + Fixed(y) + "\" x2=\"" +
           Fixed(kLeft) + "\" y2=\"" + Fixed(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + Fixed(kLeft - 8) + "\" y=\"" + Fixed(y + 4) +
           "\" text-anchor=\"end\">" + PowerLabel(e) + "</text>\n";
  }
  svg += "<text x=\"" + Fixed(kLeft + plot_w / 2) + "\" y=\"" +
         Fixed(kHeight - 10) + "\" text-anchor=\"middle\">rank</text>\n";
  svg += "<text x=\"16\" y=\"" + Fixed(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         Fixed(kTop + plot_h / 2) + ")\">frequency</text>\n";

  // Long tails collapse onto the same pixels; draw each pixel once.
  std::set<std::pair<long, long>> drawn;
  svg += "<g fill=\"#1f77b4\">\n";
  for (const auto& p : curve.points) {
    const double x = px(std::log10(static_cast<double>(p.rank)));
    const double y = py(std::log10(static_cast<double>(p.frequency)));
    if (!drawn.emplace(std::lround(x), std::lround(y)).second) continue;
    svg += "<circle cx=\"" + Fixed(x) + "\" cy=\"" + Fixed(y) + "\" r=\"1.5\"/>\n";
  }
  svg += "</g>\n";

  if (fit.n_points > 0) {
    // The fit is in natural logs; convert to log10 coordinates.
    const double ln10 = std::log(10.0);
    const double rank_max = static_cast<double>(curve.size());
    auto line_y = [&](double rank) {
      return (fit.intercept + fit.slope * std::log(rank)) / ln10;
    };
    svg += "<line x1=\"" + Fixed(px(0.0)) + "\" y1=\"" + Fixed(py(line_y(1.0))) +
           "\" x2=\"" + Fixed(px(std::log10(rank_max))) + "\" y2=\"" +
           Fixed(py(line_y(rank_max))) +
           "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + Fixed(kLeft + plot_w - 6) + "\" y=\"" + Fixed(kTop + 16) +
           "\" text-anchor=\"end\">slope " + Fixed(fit.slope) + ", R² " +
           io::FormatDouble(std::round(fit.r_squared * 1e4) / 1e4) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace zipfvocab
