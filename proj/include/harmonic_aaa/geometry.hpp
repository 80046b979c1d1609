#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "harmonic_aaa/types.hpp"

namespace harmonic_aaa {

enum class RegionClass { Interior, Exterior, OnBoundary };

const char* to_string(RegionClass c);

// Default on-edge tolerance for point classification.
inline constexpr double kDefaultPolygonTol = 1e-16;

/// Closed polygon (last vertex connects back to the first).
class PolygonRegion {
 public:
  PolygonRegion() = default;
  /// Throws InvalidInput for fewer than 3 vertices, non-finite vertices or
  /// zero signed area.
  explicit PolygonRegion(std::vector<Complex> vertices);

  const std::vector<Complex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  // Positive for counterclockwise traversal.
  double signed_area() const;

 private:
  std::vector<Complex> vertices_;
};

/// Ordered boundary points with (optional) real Dirichlet data.
struct BoundarySamples {
  std::vector<Complex> points;
  std::vector<double> values;  // empty until data is attached
  bool counterclockwise = true;

  std::size_t size() const { return points.size(); }
  bool has_values() const { return !values.empty(); }

  /// Checks lengths, finiteness and the minimum sample count.
  void validate() const;
};

struct Boundary {
  BoundarySamples samples;
  PolygonRegion polygon;
};

struct DoubleBoundary {
  Boundary outer;
  Boundary inner;
};

double signed_area(std::span<const Complex> loop);

// Euclidean distance from p to the segment [a, b].
double segment_distance(Complex p, Complex a, Complex b);

/// Winding-number classification; anything within `tol` of an edge is
/// OnBoundary.
RegionClass classify_point(Complex p, const PolygonRegion& poly, double tol = kDefaultPolygonTol);

/// MATLAB-style colon range a:step:b (endpoints computed from both ends so
/// that b is hit exactly when it lies on the grid).
std::vector<double> colon_range(double first, double step, double last);

/// Removes consecutive coincident points (including the closing point that
/// repeats the first one). Points closer than 1e-12 * (1 + max|z|) count as
/// coincident; returns the kept indices.
std::vector<std::size_t> dedup_closed_loop(const std::vector<Complex>& points);

// Generators concatenate one uniformly stepped segment per edge. By default
// the repeated segment endpoints (and the closing point) are removed;
// Duplicates::Keep returns the raw concatenation instead, which the solver
// accepts (it deduplicates before the rational fit only).
enum class Duplicates { Remove, Keep };

/// L-shaped domain with vertices 0, 2, 2+i, 1+i, 1+2i, 2i sampled with a
/// uniform step along each edge.
Boundary l_shape_boundary(double step, Duplicates dup = Duplicates::Remove);

/// Blade curve 2cos(t) + i(sin(t) + 2cos^3(t)), t uniform on [0, 2pi].
/// The polygon is always the deduplicated sample loop.
Boundary blade_boundary(std::size_t n, Duplicates dup = Duplicates::Remove);

/// Tilted square with vertices i*sqrt2, -sqrt2, -i*sqrt2, sqrt2 and the
/// square hole [-0.5, 0] x [-0.5, 0].
DoubleBoundary double_boundary(double step, Duplicates dup = Duplicates::Remove);

/// Raw (pre-dedup) point counts of the generators, for reporting.
std::size_t l_shape_raw_count(double step);

/// Inserts `per_side` points on each side of every polygon corner at
/// arclength displacements logspace(min_exp, 0, per_side). Values are
/// interpolated in arclength by the cubic through the four nearest samples
/// on the same edge (fewer when the edge has fewer). Displacements that land
/// on an existing sample or beyond the adjacent corner are skipped.
BoundarySamples cluster_corners(const BoundarySamples& s, const PolygonRegion& poly, std::size_t per_side,
                                double min_exp);

}  // namespace harmonic_aaa
