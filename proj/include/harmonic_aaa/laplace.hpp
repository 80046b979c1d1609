#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "harmonic_aaa/arnoldi.hpp"
#include "harmonic_aaa/geometry.hpp"
#include "harmonic_aaa/rational.hpp"
#include "harmonic_aaa/types.hpp"

namespace harmonic_aaa {

// Where the harmonic function is sought, relative to the (outer) boundary.
enum class SolveRegion { Interior, Exterior };

const char* to_string(SolveRegion region);

struct ClusterConfig {
  std::size_t per_side = 50;
  double min_exp = -6.0;
};

struct SolverConfig {
  std::optional<std::size_t> smooth_degree;  // default: default_smooth_degree(n)
  std::optional<std::size_t> mmax;           // default: 1000, or 200 with clustering
  double aaa_tol = 1e-13;
  int lawson = 0;
  double polygon_tol = kDefaultPolygonTol;
  std::optional<ClusterConfig> cluster;
  bool cleanup = true;  // Froissart cleanup of the singular-part AAA fit

  std::size_t effective_mmax() const;
  void validate() const;
};

/// w(z) = smooth(z) + b0 + sum_k b_k / (z - p_k) - i * im_shift.
///
/// Im b0 holds the low-order part of the normalization (im_shift alone is a
/// rounded double). `jump` is the coefficient of the inner-boundary indicator column in the
/// doubly connected case; it is reported but not part of w.
struct ComplexPotential {
  ArnoldiBasisFit smooth;
  std::vector<Complex> kept_poles;
  std::vector<Complex> pole_coeffs;
  Complex b0{0.0, 0.0};
  double im_shift = 0.0;
  double jump = 0.0;
  SolveRegion region = SolveRegion::Interior;
  Complex center{0.0, 0.0};
  double boundary_max_error = 0.0;
  // Outer boundary first; an optional second polygon is the hole.
  std::vector<PolygonRegion> polygons;

  Complex operator()(Complex z) const;
};

/// Everything the pipeline produced besides the potential itself.
struct LaplaceSolution {
  ComplexPotential potential;
  BoundarySamples samples;           // samples actually fitted (after clustering)
  std::vector<Complex> all_poles;    // every pole of the singular-part fit
  BarycentricApproximant singular_fit;
  std::vector<double> singular_data;  // u - Re(smooth) on the samples
  std::size_t smooth_degree = 0;
  std::size_t mmax_used = 0;
  std::string warning;  // non-fatal diagnostics, empty when none
};

/// 10 + ceil(ln n).
std::size_t default_smooth_degree(std::size_t n_samples);

/// u(z_j) - Re smooth(z_j).
std::vector<double> extract_singular(const BoundarySamples& s, const ArnoldiBasisFit& smooth);

/// Poles that keep w analytic in the solution region. For an Interior solve
/// these are the poles outside polys[0] (or inside the hole polys[1]); for
/// an Exterior solve the poles inside polys[0]. OnBoundary poles are dropped.
std::vector<Complex> filter_poles(const std::vector<Complex>& poles, SolveRegion region,
                                  const std::vector<PolygonRegion>& polys, double tol = kDefaultPolygonTol);

struct SingularFit {
  std::vector<Complex> pole_coeffs;
  double b0 = 0.0;
  double jump = 0.0;
  double residual_norm = 0.0;
  std::string warning;
};

/// Split-real least squares [Re B, -Im B, 1, indicator] [delta; eps; b0; J]
/// ~ residual with B(j, k) = 1 / (z_j - p_k). `inner_start`, when given,
/// adds an indicator column equal to 1 on samples [inner_start, n).
SingularFit fit_singular(const BoundarySamples& s, const std::vector<double>& residual,
                         const std::vector<Complex>& kept_poles, std::optional<std::size_t> inner_start = {});

/// Interior Dirichlet problem; Im w(center) = 0.
LaplaceSolution solve_interior(const BoundarySamples& s, const PolygonRegion& poly, Complex center,
                               const SolverConfig& cfg = {});

/// Exterior Dirichlet problem with the reciprocal basis centred at an
/// interior point; Im w(infinity) = 0.
LaplaceSolution solve_exterior(const BoundarySamples& s, const PolygonRegion& poly, Complex center,
                               const SolverConfig& cfg = {});

struct PipelineOptions {
  SolveRegion region = SolveRegion::Interior;
  bool normalize = true;  // subtract i * Im w at the anchor (center or infinity)
};

/// Shared pipeline. `boundaries` holds one loop (simply connected) or two
/// (outer, inner), concatenated in that order for the fit. The two-loop case
/// carries the inner-boundary indicator column.
LaplaceSolution solve_pipeline(const std::vector<Boundary>& boundaries, Complex center, const SolverConfig& cfg,
                               const PipelineOptions& opts);

/// Throws InvalidInput when p coincides with a kept pole (or p is infinite
/// for an interior solve).
Complex evaluate_potential(const ComplexPotential& w, Complex p);

// True when p lies in the region the potential was solved for.
bool in_solution_region(const ComplexPotential& w, Complex p, double tol = kDefaultPolygonTol);

enum class FieldMask { Valid = 0, Outside = 1, Error = 2 };

struct FieldRow {
  double x = 0.0;
  double y = 0.0;
  double re_w = 0.0;
  double im_w = 0.0;
  FieldMask mask = FieldMask::Valid;
};

struct GridWindow {
  double xmin = 0.0;
  double xmax = 1.0;
  double ymin = 0.0;
  double ymax = 1.0;
};

/// Row-major (y outer, x inner) grid of nx x ny nodes; nodes outside the
/// solution region are masked.
std::vector<FieldRow> evaluate_grid(const ComplexPotential& w, const GridWindow& window, std::size_t nx,
                                    std::size_t ny);

/// Same, at arbitrary points.
std::vector<FieldRow> evaluate_points(const ComplexPotential& w, const std::vector<Complex>& points);

}  // namespace harmonic_aaa
