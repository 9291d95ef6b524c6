#include "polarwell/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "polarwell/errors.hpp"

namespace polarwell::svg {
namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};
constexpr double kLeft = 80.0, kRight = 150.0, kTop = 50.0, kBottom = 60.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(lo))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::string num(double v) { return fmt::format("{:.2f}", v); }

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) return "0";
  return fmt::format("{:.3g}", v);
}

void render_panel(std::string& out, const Panel& panel, double ox, double oy) {
  const double pw = kPanelWidth - kLeft - kRight;
  const double ph = kPanelHeight - kTop - kBottom;

  Range xr, yr;
  for (const auto& c : panel.curves) {
    for (double v : c.x) xr.add(v);
    for (std::size_t i = 0; i < c.y.size(); ++i) {
      const double v = c.y[i];
      if (panel.y_min && v < *panel.y_min) continue;
      if (panel.y_max && v > *panel.y_max) continue;
      yr.add(v);
    }
  }
  for (const auto& mk : panel.markers) {
    xr.add(mk.x);
    yr.add(mk.y);
  }
  xr.finish();
  yr.finish();
  if (panel.y_min) yr.lo = *panel.y_min;
  if (panel.y_max) yr.hi = *panel.y_max;
  // small margin around markers so they are not drawn on the frame
  if (!panel.markers.empty()) {
    xr.lo -= 0.5;
    xr.hi += 0.5;
    yr.lo -= 0.5;
    yr.hi += 0.5;
  }
  if (panel.equal_aspect) {
    const double sx = (xr.hi - xr.lo) / pw;
    const double sy = (yr.hi - yr.lo) / ph;
    const double s = std::max(sx, sy);
    const double cx = 0.5 * (xr.lo + xr.hi), cy = 0.5 * (yr.lo + yr.hi);
    xr.lo = cx - 0.5 * s * pw;
    xr.hi = cx + 0.5 * s * pw;
    yr.lo = cy - 0.5 * s * ph;
    yr.hi = cy + 0.5 * s * ph;
  }

  auto px = [&](double x) { return ox + kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return oy + kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  out += fmt::format("<g class=\"panel\">\n<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
                     "stroke=\"#000\"/>\n",
                     num(ox + kLeft), num(oy + kTop), num(pw), num(ph));
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
                     num(ox + kLeft + pw / 2), num(oy + kTop - 15), escape(panel.title));
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     num(ox + kLeft + pw / 2), num(oy + kPanelHeight - 15), escape(panel.x_label));
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\" "
                     "transform=\"rotate(-90 {} {})\">{}</text>\n",
                     num(ox + 20), num(oy + kTop + ph / 2), num(ox + 20), num(oy + kTop + ph / 2),
                     escape(panel.y_label));
  for (int k = 0; k <= 4; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n", num(px(xv)),
                       num(oy + kTop + ph + 16), tick_label(xv));
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n",
                       num(ox + kLeft - 6), num(py(yv) + 4), tick_label(yv));
  }

  for (std::size_t ci = 0; ci < panel.curves.size(); ++ci) {
    const auto& c = panel.curves[ci];
    if (c.x.size() != c.y.size()) throw DomainError("curve '" + c.label + "' has mismatched x/y lengths");
    const char* color = kPalette[ci % kPalette.size()];
    std::string d;
    bool pen_down = false;
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      const double y = c.y[i];
      const bool visible = std::isfinite(y) && std::isfinite(c.x[i]) && y >= yr.lo && y <= yr.hi;
      if (!visible) {
        pen_down = false;
        continue;
      }
      d += pen_down ? " L" : (d.empty() ? "M" : " M");
      d += num(px(c.x[i])) + ' ' + num(py(y));
      pen_down = true;
    }
    if (d.empty()) d = fmt::format("M{} {}", num(ox + kLeft), num(oy + kTop));
    out += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"><title>{}</title></path>\n",
                       d, color, escape(c.label));
    const double ly = oy + kTop + 18.0 * (ci + 1);
    out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                       num(ox + kLeft + pw + 10), num(ly), num(ox + kLeft + pw + 35), num(ly), color);
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n", num(ox + kLeft + pw + 40),
                       num(ly + 4), escape(c.label));
  }
  for (const auto& mk : panel.markers) {
    out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"#1f77b4\"><title>{}</title></circle>\n",
                       num(px(mk.x)), num(py(mk.y)), escape(mk.label));
  }
  out += "</g>\n";
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string render(const Figure& figure) {
  if (figure.rows < 1 || figure.cols < 1) throw DomainError("figure needs at least one panel slot");
  if (static_cast<int>(figure.panels.size()) > figure.rows * figure.cols) {
    throw DomainError("more panels than figure slots");
  }
  const int width = kPanelWidth * figure.cols;
  const int height = kPanelHeight * figure.rows;
  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"#fff\"/>\n",
      width, height);
  for (std::size_t i = 0; i < figure.panels.size(); ++i) {
    const int r = static_cast<int>(i) / figure.cols;
    const int c = static_cast<int>(i) % figure.cols;
    render_panel(out, figure.panels[i], c * kPanelWidth, r * kPanelHeight);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace polarwell::svg
