#include "interpsel/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "interpsel/errors.hpp"

namespace interpsel {

namespace {

constexpr int kSize = 640;      // square canvas
constexpr int kMargin = 40;
constexpr double kPointRadius = 2.5;

std::string num(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

void append_separator(std::string& svg, const Eigen::Vector2d& direction,
                      const char* color, double scale, double extent) {
  if (direction.norm() == 0.0)
    throw InputError("separator direction must be non-zero");
  // The separator of a weight map w is {x : w . x = 0}; it runs along the
  // orthogonal unit vector, through the origin.
  const Eigen::Vector2d along =
      Eigen::Vector2d(-direction.y(), direction.x()).normalized();
  const double reach = 1.5 * extent;
  const double half = kSize / 2.0;
  const double x1 = half + along.x() * reach * scale;
  const double y1 = half - along.y() * reach * scale;
  const double x2 = half - along.x() * reach * scale;
  const double y2 = half + along.y() * reach * scale;
  svg += "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" +
         num(x2) + "\" y2=\"" + num(y2) + "\" stroke=\"" + color +
         "\" stroke-width=\"2\"/>\n";
}

}  // namespace

std::string render_scatter_svg(const Dataset& data,
                               const SeparatorLines& lines) {
  data.validate();
  if (data.p() != 2)
    throw InputError("scatter plot requires exactly 2 features");

  double extent = 1e-9;
  for (Eigen::Index i = 0; i < data.n(); ++i)
    extent = std::max({extent, std::abs(data.X(i, 0)), std::abs(data.X(i, 1))});
  extent *= 1.1;
  const double scale = (kSize / 2.0 - kMargin) / extent;
  const double half = kSize / 2.0;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kSize) + "\" height=\"" + std::to_string(kSize) +
         "\" viewBox=\"0 0 " + std::to_string(kSize) + " " +
         std::to_string(kSize) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double cx = half + data.X(i, 0) * scale;
    const double cy = half - data.X(i, 1) * scale;
    const char* color = data.y[i] > 0 ? "#1f77b4" : "#d62728";
    svg += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
           num(kPointRadius) + "\" fill=\"" + color +
           "\" fill-opacity=\"0.6\"/>\n";
  }

  if (lines.reference.has_value())
    append_separator(svg, *lines.reference, "black", scale, extent);
  if (lines.model.has_value())
    append_separator(svg, *lines.model, "magenta", scale, extent);

  double legend_y = 20.0;
  const auto legend_entry = [&](const char* color, const std::string& text) {
    svg += "  <text x=\"12\" y=\"" + num(legend_y) + "\" fill=\"" + color +
           "\" font-family=\"sans-serif\" font-size=\"13\">" + text +
           "</text>\n";
    legend_y += 16.0;
  };
  if (lines.reference.has_value())
    legend_entry("black", "reference separator (through the origin; models have no intercept)");
  if (lines.model.has_value())
    legend_entry("magenta", "fitted-model separator");
  legend_entry("#1f77b4", "class +1");
  legend_entry("#d62728", "class -1");

  svg += "</svg>\n";
  return svg;
}

}  // namespace interpsel
