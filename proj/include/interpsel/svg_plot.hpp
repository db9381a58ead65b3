#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "interpsel/dataset.hpp"

namespace interpsel {

/// Separator lines to overlay on the scatter. Each entry is a weight-map
/// direction; the drawn line is the set {x : direction . x = 0} through the
/// origin (the models carry no intercept).
struct SeparatorLines {
  std::optional<Eigen::Vector2d> reference;  // drawn black
  std::optional<Eigen::Vector2d> model;      // drawn magenta
};

/// Renders a 2-D dataset as pure-text SVG: one circle per sample colored by
/// class, plus one <line> element per configured separator and a small
/// legend. Output bytes depend only on the inputs. Throws InputError unless
/// p == 2.
std::string render_scatter_svg(const Dataset& data,
                               const SeparatorLines& lines);

}  // namespace interpsel
