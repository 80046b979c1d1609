#include "harmonic_aaa/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "harmonic_aaa/errors.hpp"

namespace harmonic_aaa {

namespace {

std::vector<Boundary> with_green_data(std::vector<Boundary> loops, Complex center, double sign) {
  for (Boundary& b : loops) {
    b.samples.values.resize(b.samples.size());
    for (std::size_t j = 0; j < b.samples.size(); ++j) {
      b.samples.values[j] = sign * std::log(std::abs(b.samples.points[j] - center));
    }
  }
  return loops;
}

// Distinct points with their images, in input order.
void collect_images(ConformalMap& map, Complex center, bool reciprocal) {
  const LaplaceSolution& sol = map.solution;
  const auto& pts = sol.samples.points;
  std::vector<Complex> seen;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const Complex z = pts[j];
    if (std::find(seen.begin(), seen.end(), z) != seen.end()) continue;
    seen.push_back(z);
    const Complex w = evaluate_potential(sol.potential, z);
    map.points.push_back(z);
    map.images.push_back(reciprocal ? std::exp(w) / (z - center) : (z - center) * std::exp(w));
  }
}

void fit_maps(ConformalMap& map, const MapFitOptions& fit) {
  const auto n = static_cast<Eigen::Index>(map.points.size());
  ComplexVector z(n);
  ComplexVector g(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    z(j) = map.points[static_cast<std::size_t>(j)];
    g(j) = map.images[static_cast<std::size_t>(j)];
  }
  AaaOptions opts;
  opts.mmax = fit.mmax;
  opts.tol = fit.tol;
  map.forward = aaa(g, z, opts);
  map.inverse = aaa(z, g, opts);
}

std::vector<Complex> polyline_through(const BarycentricApproximant& r, const std::vector<Complex>& path) {
  std::vector<Complex> out;
  out.reserve(path.size());
  for (Complex p : path) out.push_back(r(p));
  return out;
}

}  // namespace

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::DiskInterior:
      return "disk-interior";
    case MapKind::DiskExterior:
      return "disk-exterior";
    case MapKind::Annulus:
      return "annulus";
  }
  return "?";
}

ConformalMap map_interior(const Boundary& boundary, Complex center, const SolverConfig& cfg,
                          const MapFitOptions& fit) {
  ConformalMap map;
  map.kind = MapKind::DiskInterior;
  map.solution = solve_pipeline(with_green_data({boundary}, center, -1.0), center, cfg,
                                {SolveRegion::Interior, false});
  collect_images(map, center, false);
  fit_maps(map, fit);
  return map;
}

ConformalMap map_exterior(const Boundary& boundary, Complex center, const SolverConfig& cfg,
                          const MapFitOptions& fit) {
  ConformalMap map;
  map.kind = MapKind::DiskExterior;
  map.solution = solve_pipeline(with_green_data({boundary}, center, 1.0), center, cfg,
                                {SolveRegion::Exterior, false});
  collect_images(map, center, true);
  fit_maps(map, fit);
  return map;
}

ConformalMap map_doubly_connected(const Boundary& outer, const Boundary& inner, Complex center,
                                  const SolverConfig& cfg, const MapFitOptions& fit) {
  if (classify_point(center, inner.polygon, cfg.polygon_tol) != RegionClass::Interior) {
    throw InvalidInput("map_doubly_connected: center must lie inside the hole");
  }
  ConformalMap map;
  map.kind = MapKind::Annulus;
  map.solution = solve_pipeline(with_green_data({outer, inner}, center, -1.0), center, cfg,
                                {SolveRegion::Interior, false});
  map.modulus = std::exp(-map.solution.potential.jump);
  collect_images(map, center, false);

  // Outer samples come first; the first point of the inner loop starts the hole.
  const Complex first_inner = inner.samples.points.front();
  const auto it = std::find(map.points.begin(), map.points.end(), first_inner);
  map.inner_start = static_cast<std::size_t>(it - map.points.begin());
  fit_maps(map, fit);
  return map;
}

int winding_number(const std::vector<Complex>& loop, Complex origin) {
  double total = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t j = 0; j < n; ++j) {
    total += std::arg((loop[(j + 1) % n] - origin) / (loop[j] - origin));
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

std::vector<Polyline> map_gridlines(const ConformalMap& map, std::size_t circles, std::size_t rays,
                                    std::size_t per_line) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double r_lo = map.kind == MapKind::Annulus ? *map.modulus : (map.kind == MapKind::DiskExterior ? 0.2 : 0.0);
  std::vector<Polyline> out;

  for (std::size_t c = 1; c <= circles; ++c) {
    const double r = r_lo + (1.0 - r_lo) * static_cast<double>(c) / static_cast<double>(circles + 1);
    std::vector<Complex> path(per_line + 1);
    for (std::size_t k = 0; k <= per_line; ++k) path[k] = std::polar(r, two_pi * k / per_line);
    out.push_back({"circle_" + std::to_string(c), polyline_through(map.inverse, path)});
  }
  for (std::size_t a = 0; a < rays; ++a) {
    const double theta = two_pi * static_cast<double>(a) / static_cast<double>(rays);
    const double start = std::max(r_lo, 0.05);
    std::vector<Complex> path(per_line + 1);
    for (std::size_t k = 0; k <= per_line; ++k) {
      path[k] = std::polar(start + (0.999 - start) * static_cast<double>(k) / per_line, theta);
    }
    out.push_back({"ray_" + std::to_string(a), polyline_through(map.inverse, path)});
  }

  if (map.kind == MapKind::DiskExterior) return out;

  // Square grid inside the domain, pushed forward; lines are split where
  // they leave the region.
  const ComplexPotential& w = map.solution.potential;
  const auto& verts = w.polygons.front().vertices();
  double xmin = verts[0].real(), xmax = xmin, ymin = verts[0].imag(), ymax = ymin;
  for (Complex v : verts) {
    xmin = std::min(xmin, v.real());
    xmax = std::max(xmax, v.real());
    ymin = std::min(ymin, v.imag());
    ymax = std::max(ymax, v.imag());
  }
  const std::size_t lines = 10;
  int seg = 0;
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t l = 1; l < lines; ++l) {
      const double t = static_cast<double>(l) / static_cast<double>(lines);
      std::vector<Complex> run;
      for (std::size_t k = 0; k <= per_line; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(per_line);
        const Complex p = dir == 0 ? Complex(xmin + t * (xmax - xmin), ymin + s * (ymax - ymin))
                                   : Complex(xmin + s * (xmax - xmin), ymin + t * (ymax - ymin));
        if (in_solution_region(w, p)) {
          run.push_back(map.forward(p));
        } else if (!run.empty()) {
          out.push_back({"grid_" + std::to_string(seg++), std::move(run)});
          run.clear();
        }
      }
      if (!run.empty()) out.push_back({"grid_" + std::to_string(seg++), std::move(run)});
    }
  }
  return out;
}

}  // namespace harmonic_aaa
