#pragma once

#include <string>
#include <utility>
#include <vector>

#include "elephant/core.hpp"

namespace elephant {

/// Minimal self-contained SVG panel: axes, optional histogram bars and
/// polylines. No external plotting dependency.
class SvgPanel {
 public:
  SvgPanel(double x_min, double x_max, double y_min, double y_max, int width = 640,
           int height = 440);

  void add_histogram(const std::vector<double>& edges, const std::vector<double>& density,
                     const std::string& fill = "#b0c4de");
  void add_polyline(const VecD& x, const VecD& y, const std::string& stroke = "#1f4e9c",
                    double stroke_width = 1.8);
  void add_title(const std::string& title);
  void write(const std::string& path) const;

 private:
  double px(double x) const;
  double py(double y) const;

  double x_min_, x_max_, y_min_, y_max_;
  int width_, height_;
  static constexpr int margin_ = 46;
  std::vector<std::string> body_;
  std::string title_;
};

}  // namespace elephant
