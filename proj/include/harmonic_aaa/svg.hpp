#pragma once

#include <string>
#include <vector>

#include "harmonic_aaa/conformal.hpp"
#include "harmonic_aaa/geometry.hpp"
#include "harmonic_aaa/laplace.hpp"

namespace harmonic_aaa::svg {

// Masked field on an nx x ny grid (row-major, y outer), drawn as filled
// bands of Re w.
struct FieldLayer {
  std::vector<FieldRow> rows;
  std::size_t nx = 0;
  std::size_t ny = 0;
  int bands = 16;
};

/// One square plot. The view is fitted to the polygons, circles, polylines
/// and field; poles outside it are not drawn.
struct Panel {
  std::string title;
  std::vector<PolygonRegion> polygons;
  std::vector<double> circles;  // centred at the origin
  std::vector<Polyline> polylines;
  std::vector<Complex> kept_poles;     // crosses
  std::vector<Complex> dropped_poles;  // dots
  std::optional<FieldLayer> field;
};

/// Static SVG document with the panels side by side.
std::string render(const std::vector<Panel>& panels, double panel_size = 480.0);

// Convenience builders.
Panel solution_panel(const LaplaceSolution& sol, std::optional<FieldLayer> field);
std::vector<Panel> map_panels(const ConformalMap& map, const std::vector<Polyline>& lines);

}  // namespace harmonic_aaa::svg
