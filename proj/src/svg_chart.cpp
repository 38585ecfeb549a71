#include "esgirt/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"

namespace esgirt {

namespace {

constexpr int kWidth = 920;
constexpr int kHeight = 560;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 160;  // legend column
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 60;
constexpr int kTicks = 5;

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
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

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

}  // namespace

LineChart::LineChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void LineChart::set_x_range(double min, double max) { x_range_ = {min, max}; }
void LineChart::set_y_range(double min, double max) { y_range_ = {min, max}; }

void LineChart::add_series(std::string label, std::vector<std::pair<double, double>> points) {
  series_.push_back(Series{std::move(label), std::move(points)});
}

std::string LineChart::render() const {
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  if (x_range_) {
    x_min = x_range_->first;
    x_max = x_range_->second;
  } else {
    bool first = true;
    for (const Series& s : series_) {
      for (auto [x, y] : s.points) {
        if (first) {
          x_min = x_max = x;
          first = false;
        }
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
      }
    }
  }
  if (y_range_) {
    y_min = y_range_->first;
    y_max = y_range_->second;
  } else {
    bool first = true;
    for (const Series& s : series_) {
      for (auto [x, y] : s.points) {
        if (first) {
          y_min = y_max = y;
          first = false;
        }
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (!(x_max > x_min)) x_max = x_min + 1;
  if (!(y_max > y_min)) y_max = y_min + 1;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) {
    return kMarginTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
         std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"" + std::to_string(kWidth) + "\" height=\"" +
         std::to_string(kHeight) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + format_fixed(kMarginLeft + plot_w / 2, 2) +
         "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" +
         xml_escape(title_) + "</text>\n";

  // axes and ticks
  std::string axis_color = "#333333";
  svg += "<g stroke=\"" + axis_color + "\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + format_fixed(sx(x_min), 2) + "\" y1=\"" + format_fixed(sy(y_min), 2) +
         "\" x2=\"" + format_fixed(sx(x_max), 2) + "\" y2=\"" + format_fixed(sy(y_min), 2) +
         "\"/>\n";
  svg += "<line x1=\"" + format_fixed(sx(x_min), 2) + "\" y1=\"" + format_fixed(sy(y_min), 2) +
         "\" x2=\"" + format_fixed(sx(x_min), 2) + "\" y2=\"" + format_fixed(sy(y_max), 2) +
         "\"/>\n";
  for (int t = 0; t < kTicks; ++t) {
    double fx = x_min + (x_max - x_min) * t / (kTicks - 1);
    double fy = y_min + (y_max - y_min) * t / (kTicks - 1);
    svg += "<line x1=\"" + format_fixed(sx(fx), 2) + "\" y1=\"" + format_fixed(sy(y_min), 2) +
           "\" x2=\"" + format_fixed(sx(fx), 2) + "\" y2=\"" +
           format_fixed(sy(y_min) + 5, 2) + "\"/>\n";
    svg += "<line x1=\"" + format_fixed(sx(x_min), 2) + "\" y1=\"" + format_fixed(sy(fy), 2) +
           "\" x2=\"" + format_fixed(sx(x_min) - 5, 2) + "\" y2=\"" + format_fixed(sy(fy), 2) +
           "\"/>\n";
  }
  svg += "</g>\n";

  svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  for (int t = 0; t < kTicks; ++t) {
    double fx = x_min + (x_max - x_min) * t / (kTicks - 1);
    double fy = y_min + (y_max - y_min) * t / (kTicks - 1);
    svg += "<text x=\"" + format_fixed(sx(fx), 2) + "\" y=\"" +
           format_fixed(sy(y_min) + 20, 2) + "\" text-anchor=\"middle\">" + tick_label(fx) +
           "</text>\n";
    svg += "<text x=\"" + format_fixed(sx(x_min) - 9, 2) + "\" y=\"" +
           format_fixed(sy(fy) + 4, 2) + "\" text-anchor=\"end\">" + tick_label(fy) +
           "</text>\n";
  }
  svg += "<text x=\"" + format_fixed(kMarginLeft + plot_w / 2, 2) + "\" y=\"" +
         format_fixed(kHeight - 18, 2) + "\" text-anchor=\"middle\" font-size=\"14\">" +
         xml_escape(x_label_) + "</text>\n";
  svg += "<text x=\"20\" y=\"" + format_fixed(kMarginTop + plot_h / 2, 2) +
         "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 " +
         format_fixed(kMarginTop + plot_h / 2, 2) + ")\">" + xml_escape(y_label_) +
         "</text>\n";
  svg += "</g>\n";

  for (size_t s = 0; s < series_.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    std::string points;
    for (auto [x, y] : series_[s].points) {
      if (!points.empty()) points += ' ';
      points += format_fixed(sx(x), 2) + "," + format_fixed(sy(y), 2);
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }

  // legend
  double lx = kWidth - kMarginRight + 18;
  for (size_t s = 0; s < series_.size(); ++s) {
    double ly = kMarginTop + 8 + 18.0 * static_cast<double>(s);
    svg += "<rect x=\"" + format_fixed(lx, 2) + "\" y=\"" + format_fixed(ly - 9, 2) +
           "\" width=\"12\" height=\"12\" fill=\"" + kPalette[s % kPaletteSize] + "\"/>\n";
    svg += "<text x=\"" + format_fixed(lx + 17, 2) + "\" y=\"" + format_fixed(ly + 1, 2) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">" +
           xml_escape(series_[s].label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace esgirt
