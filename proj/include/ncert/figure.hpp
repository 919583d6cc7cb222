#pragma once

// SVG drawing of the z-x great disk of the Bloch ball with the six pure
// states, the three diameters through I/2 and the two trine triangles.

#include <string>

namespace ncert {

struct FigureOptions {
  double size = 400.0;
  double radius = 150.0;
};

/// Bloch (x, z) maps to (cx + R x, cy - R z), so z = +1 is at the top.
std::string bloch_figure_svg(const FigureOptions& options = {});

}  // namespace ncert
