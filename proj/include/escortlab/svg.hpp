#pragma once

#include <string>
#include <vector>

#include "escortlab/escort.hpp"

// Deterministic SVG rendering: fixed canvas, fixed numeric precision, so
// identical inputs produce byte-identical files.

namespace escortlab {

enum class PlotStyle { Disk, HalfPlane, XY };

PlotStyle plot_style_from_name(const std::string& name);

// Renders one or more polylines.  Disk style draws the unit circle; the
// viewport is fitted to the data (fixed margins) for the other styles.
std::string render_svg(const std::vector<PointSequence>& curves, PlotStyle style);

// Closed outline of the euclidean epsilon-cone [x, y]_eps (2d), rendered in
// the XY style together with the segment endpoints.
std::string render_cone_svg(double d, double eps);

}  // namespace escortlab
