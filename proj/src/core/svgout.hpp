#pragma once

#include <string>
#include <vector>

#include "core/bezfit.hpp"

namespace svx {

/// SVG document with one path element per spline; absolute cubic commands,
/// pixel coordinates (y down), 1 px strokes, no fill.
std::string splines_to_svg(const std::vector<BezierSpline> &splines, int width, int height);

} // namespace svx
