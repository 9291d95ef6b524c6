#pragma once

// Minimal static SVG line/scatter plots. Each panel is 800x600; a figure is
// a rows x cols arrangement of panels. Every curve becomes exactly one
// <path> element (clipped stretches start new subpaths inside that element).

#include <optional>
#include <string>
#include <vector>

namespace polarwell::svg {

inline constexpr int kPanelWidth = 800;
inline constexpr int kPanelHeight = 600;

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Marker {
  double x;
  double y;
  std::string label;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Curve> curves;
  std::vector<Marker> markers;
  std::optional<double> y_min;  // clip range; auto from data when unset
  std::optional<double> y_max;
  bool equal_aspect = false;
};

struct Figure {
  int rows = 1;
  int cols = 1;
  std::vector<Panel> panels;  // row-major, at most rows * cols
};

[[nodiscard]] std::string render(const Figure& figure);
[[nodiscard]] std::string escape(const std::string& text);

}  // namespace polarwell::svg
