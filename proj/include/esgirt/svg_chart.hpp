#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace esgirt {

// Deterministic SVG line chart: fixed layout, fixed palette, no
// timestamps, coordinates at two decimals. Series are the only
// <polyline> elements in the output.
class LineChart {
 public:
  LineChart(std::string title, std::string x_label, std::string y_label);

  void set_x_range(double min, double max);
  void set_y_range(double min, double max);
  void add_series(std::string label, std::vector<std::pair<double, double>> points);

  std::string render() const;

 private:
  std::string title_, x_label_, y_label_;
  std::optional<std::pair<double, double>> x_range_, y_range_;
  struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
  };
  std::vector<Series> series_;
};

}  // namespace esgirt
