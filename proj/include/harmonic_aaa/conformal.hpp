#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harmonic_aaa/geometry.hpp"
#include "harmonic_aaa/laplace.hpp"
#include "harmonic_aaa/rational.hpp"

namespace harmonic_aaa {

enum class MapKind { DiskInterior, DiskExterior, Annulus };

const char* to_string(MapKind kind);

/// Conformal map of a polygonal domain onto the unit disk (or the annulus
/// rho < |w| < 1), with a rational inverse. Unique only up to rotation.
struct ConformalMap {
  MapKind kind = MapKind::DiskInterior;
  BarycentricApproximant forward;  // domain -> disk / annulus
  BarycentricApproximant inverse;  // disk / annulus -> domain
  std::optional<double> modulus;   // Annulus only
  LaplaceSolution solution;        // Green's-function potential behind the map
  std::vector<Complex> points;      // distinct boundary samples used for the fits
  std::vector<Complex> images;      // boundary images g(z_j)
  std::size_t inner_start = 0;     // first inner-boundary index in points (Annulus)
};

// Options for the final forward/inverse rational fits.
struct MapFitOptions {
  std::size_t mmax = 100;
  double tol = 1e-13;
};

/// Interior of a simply connected polygon onto the unit disk, center -> 0.
ConformalMap map_interior(const Boundary& boundary, Complex center, const SolverConfig& cfg = {},
                          const MapFitOptions& fit = {});

/// Exterior of a polygon onto the unit disk, infinity -> 0. `center` is an
/// interior point used as the reciprocal-basis center.
ConformalMap map_exterior(const Boundary& boundary, Complex center, const SolverConfig& cfg = {},
                          const MapFitOptions& fit = {});

/// Region between `outer` and the hole `inner` onto rho < |w| < 1. `center`
/// must lie inside the hole.
ConformalMap map_doubly_connected(const Boundary& outer, const Boundary& inner, Complex center,
                                  const SolverConfig& cfg = {}, const MapFitOptions& fit = {});

struct Polyline {
  std::string id;
  std::vector<Complex> points;
};

/// Gridline images for plotting: circles and rays of the disk/annulus pulled
/// back through the inverse map, and (for interior kinds) a square grid in
/// the domain pushed through the forward map.
std::vector<Polyline> map_gridlines(const ConformalMap& map, std::size_t circles = 8, std::size_t rays = 16,
                                    std::size_t per_line = 200);

/// Discrete winding number of a closed sequence of points around `origin`.
int winding_number(const std::vector<Complex>& loop, Complex origin = {0.0, 0.0});

}  // namespace harmonic_aaa
