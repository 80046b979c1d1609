#include "harmonic_aaa/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "harmonic_aaa/errors.hpp"
#include "harmonic_aaa/linalg.hpp"

namespace harmonic_aaa {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Indices of the first occurrence of every distinct point, in input order.
std::vector<Eigen::Index> unique_points(const std::vector<Complex>& z) {
  std::vector<Eigen::Index> order(z.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto less = [&](Eigen::Index a, Eigen::Index b) {
    const Complex za = z[static_cast<std::size_t>(a)];
    const Complex zb = z[static_cast<std::size_t>(b)];
    if (za.real() != zb.real()) return za.real() < zb.real();
    if (za.imag() != zb.imag()) return za.imag() < zb.imag();
    return a < b;
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<bool> keep(z.size(), true);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (z[static_cast<std::size_t>(order[i])] == z[static_cast<std::size_t>(order[i - 1])]) {
      keep[static_cast<std::size_t>(order[i])] = false;
    }
  }
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (keep[i]) out.push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

using Wide = std::complex<long double>;

// b0 + sum_k b_k / (p - p_k) - i * im_shift.
//
// The fitted coefficients are often large and of alternating sign, so the sum
// cancels heavily; it is accumulated in extended precision to keep w smooth
// at the rounding level (finite differences of w stay meaningful). The
// im_shift is folded into the same accumulator because it is typically as
// large as the individual terms.
Wide singular_part(const ComplexPotential& w, Complex p) {
  long double re = w.b0.real();
  long double im = static_cast<long double>(w.b0.imag()) - w.im_shift;
  if (!finite(p)) return {re, im};
  for (std::size_t k = 0; k < w.kept_poles.size(); ++k) {
    const long double dx = static_cast<long double>(p.real()) - w.kept_poles[k].real();
    const long double dy = static_cast<long double>(p.imag()) - w.kept_poles[k].imag();
    const long double br = w.pole_coeffs[k].real();
    const long double bi = w.pole_coeffs[k].imag();
    const long double d2 = dx * dx + dy * dy;
    re += (br * dx + bi * dy) / d2;
    im += (bi * dx - br * dy) / d2;
  }
  return {re, im};
}

Complex assemble(const ComplexPotential& w, Complex p) {
  const Complex s = arnoldi_eval(w.smooth, p);
  const Wide total = singular_part(w, p) + Wide(s.real(), s.imag());
  return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

}  // namespace

const char* to_string(SolveRegion region) { return region == SolveRegion::Interior ? "interior" : "exterior"; }

std::size_t SolverConfig::effective_mmax() const {
  if (mmax) return *mmax;
  return cluster ? 200 : 1000;
}

void SolverConfig::validate() const {
  if (effective_mmax() < 1) throw InvalidInput("solver: mmax must be >= 1");
  if (!(aaa_tol > 0.0)) throw InvalidInput("solver: aaa_tol must be positive");
  if (lawson != 0 && lawson != 1) throw InvalidInput("solver: lawson must be 0 or 1");
  if (!(polygon_tol > 0.0)) throw InvalidInput("solver: polygon_tol must be positive");
  if (cluster && (cluster->per_side < 1 || !(cluster->min_exp < 0.0))) {
    throw InvalidInput("solver: clustering needs per_side >= 1 and min_exp < 0");
  }
}

Complex ComplexPotential::operator()(Complex z) const { return evaluate_potential(*this, z); }

std::size_t default_smooth_degree(std::size_t n_samples) {
  if (n_samples < 3) throw InvalidInput("default_smooth_degree: need at least 3 samples");
  return 10 + static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n_samples))));
}

std::vector<double> extract_singular(const BoundarySamples& s, const ArnoldiBasisFit& smooth) {
  if (s.values.size() != s.points.size()) throw InvalidInput("extract_singular: samples carry no values");
  std::vector<double> out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) out[j] = s.values[j] - arnoldi_eval(smooth, s.points[j]).real();
  return out;
}

std::vector<Complex> filter_poles(const std::vector<Complex>& poles, SolveRegion region,
                                  const std::vector<PolygonRegion>& polys, double tol) {
  if (polys.empty() || polys.size() > 2) throw InvalidInput("filter_poles: need one or two polygons");
  std::vector<Complex> kept;
  for (Complex p : poles) {
    if (!finite(p)) continue;
    const RegionClass outer = classify_point(p, polys[0], tol);
    bool keep = false;
    if (region == SolveRegion::Interior) {
      keep = outer == RegionClass::Exterior;
      if (!keep && polys.size() == 2) keep = classify_point(p, polys[1], tol) == RegionClass::Interior;
    } else {
      keep = outer == RegionClass::Interior;
    }
    if (keep) kept.push_back(p);
  }
  return kept;
}

SingularFit fit_singular(const BoundarySamples& s, const std::vector<double>& residual,
                         const std::vector<Complex>& kept_poles, std::optional<std::size_t> inner_start) {
  const auto n = static_cast<Eigen::Index>(s.size());
  if (static_cast<Eigen::Index>(residual.size()) != n) {
    throw InvalidInput("fit_singular: residual length " + std::to_string(residual.size()) + " != sample count " +
                       std::to_string(n));
  }
  if (inner_start && *inner_start > s.size()) throw InvalidInput("fit_singular: inner_start beyond sample count");

  const auto k = static_cast<Eigen::Index>(kept_poles.size());
  const Eigen::Index extra = inner_start ? 2 : 1;
  // Columns: Re B | ones | indicator | -Im B. The imaginary counterparts of
  // the real-only columns would be identically zero and are left out.
  RealMatrix a(n, 2 * k + extra);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex z = s.points[static_cast<std::size_t>(j)];
    for (Eigen::Index c = 0; c < k; ++c) {
      const Complex b = 1.0 / (z - kept_poles[static_cast<std::size_t>(c)]);
      a(j, c) = b.real();
      a(j, k + extra + c) = -b.imag();
    }
    a(j, k) = 1.0;
    if (inner_start) a(j, k + 1) = static_cast<std::size_t>(j) >= *inner_start ? 1.0 : 0.0;
  }
  const RealVector rhs = Eigen::Map<const RealVector>(residual.data(), n);
  const auto ls = linalg::lstsq(a, rhs);

  SingularFit out;
  out.pole_coeffs.resize(static_cast<std::size_t>(k));
  for (Eigen::Index c = 0; c < k; ++c) out.pole_coeffs[static_cast<std::size_t>(c)] = {ls.x(c), ls.x(k + extra + c)};
  out.b0 = ls.x(k);
  if (inner_start) out.jump = ls.x(k + 1);
  out.residual_norm = ls.residual_norm;
  if (k == 0 && n > 0 && rhs.cwiseAbs().maxCoeff() > 1e-8) {
    out.warning = "no poles kept; singular part reduced to a constant";
  }
  return out;
}

LaplaceSolution solve_pipeline(const std::vector<Boundary>& boundaries, Complex center, const SolverConfig& cfg,
                               const PipelineOptions& opts) {
  cfg.validate();
  if (boundaries.empty() || boundaries.size() > 2) throw InvalidInput("solver: need one or two boundary loops");
  if (boundaries.size() == 2 && opts.region != SolveRegion::Interior) {
    throw InvalidInput("solver: doubly connected problems are interior problems");
  }
  if (!finite(center)) throw InvalidInput("solver: center must be finite");

  std::vector<PolygonRegion> polys;
  BoundarySamples samples;
  std::optional<std::size_t> inner_start;
  for (std::size_t b = 0; b < boundaries.size(); ++b) {
    const Boundary& loop = boundaries[b];
    loop.samples.validate();
    if (!loop.samples.has_values()) throw InvalidInput("solver: boundary samples carry no values");
    BoundarySamples part = loop.samples;
    if (cfg.cluster) part = cluster_corners(part, loop.polygon, cfg.cluster->per_side, cfg.cluster->min_exp);
    if (b == 1) inner_start = samples.size();
    samples.points.insert(samples.points.end(), part.points.begin(), part.points.end());
    samples.values.insert(samples.values.end(), part.values.begin(), part.values.end());
    polys.push_back(loop.polygon);
  }
  samples.counterclockwise = boundaries.front().samples.counterclockwise;

  const PolygonRegion& anchor_poly = polys.size() == 2 ? polys[1] : polys[0];
  if (classify_point(center, anchor_poly, cfg.polygon_tol) != RegionClass::Interior) {
    throw InvalidInput(polys.size() == 2 ? "solver: center must lie inside the hole"
                                         : "solver: center must lie inside the polygon");
  }

  const std::size_t n = samples.size();
  LaplaceSolution sol;
  sol.smooth_degree = cfg.smooth_degree ? *cfg.smooth_degree : default_smooth_degree(n);
  sol.mmax_used = cfg.effective_mmax();

  ComplexVector z(static_cast<Eigen::Index>(n));
  ComplexVector u(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    z(static_cast<Eigen::Index>(j)) = samples.points[j];
    u(static_cast<Eigen::Index>(j)) = samples.values[j];
  }

  // Step 1: smooth part.
  const BasisKind kind = opts.region == SolveRegion::Interior ? BasisKind::Forward : BasisKind::Reciprocal;
  ComplexPotential& w = sol.potential;
  w.smooth = arnoldi_fit(z, u, sol.smooth_degree, center, kind);
  w.region = opts.region;
  w.center = center;
  w.polygons = polys;

  // Step 2: singular data and its rational fit on distinct points.
  sol.singular_data = extract_singular(samples, w.smooth);
  const auto uniq = unique_points(samples.points);
  ComplexVector zu(static_cast<Eigen::Index>(uniq.size()));
  ComplexVector fu(static_cast<Eigen::Index>(uniq.size()));
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    zu(static_cast<Eigen::Index>(i)) = samples.points[static_cast<std::size_t>(uniq[i])];
    fu(static_cast<Eigen::Index>(i)) = sol.singular_data[static_cast<std::size_t>(uniq[i])];
  }
  AaaOptions aaa_opts;
  aaa_opts.mmax = sol.mmax_used;
  aaa_opts.tol = cfg.aaa_tol;
  aaa_opts.lawson = cfg.lawson;
  // When the smooth part already reproduces the data to the AAA tolerance the
  // remainder is rounding noise; fitting it would only produce spurious poles.
  if (fu.cwiseAbs().maxCoeff() <= cfg.aaa_tol * u.cwiseAbs().maxCoeff()) aaa_opts.mmax = 1;
  sol.singular_fit = aaa(fu, zu, aaa_opts);
  if (cfg.cleanup && cfg.lawson == 0) sol.singular_fit = cleanup(sol.singular_fit, fu, zu);

  // Step 3: pole selection and the second least-squares problem.
  if (sol.singular_fit.size() >= 2) {
    const PoleData prz = poles_residues_zeros(sol.singular_fit);
    sol.all_poles.assign(prz.poles.begin(), prz.poles.end());
  }
  w.kept_poles = filter_poles(sol.all_poles, opts.region, polys, cfg.polygon_tol);
  const SingularFit sf = fit_singular(samples, sol.singular_data, w.kept_poles, inner_start);
  w.pole_coeffs = sf.pole_coeffs;
  w.b0 = sf.b0;
  w.jump = sf.jump;
  sol.warning = sf.warning;

  // Step 4: normalization and the boundary error.
  if (opts.normalize) {
    // Im w at the anchor is usually large, so the shift is split: its double
    // rounding is carried by Im b0 (the fit leaves Im b0 = 0), and Im w
    // vanishes at the anchor to extended-precision rounding.
    const Complex anchor = opts.region == SolveRegion::Interior ? center : Complex(INFINITY, 0.0);
    w.im_shift = 0.0;
    const Complex s = arnoldi_eval(w.smooth, anchor);
    const long double im = singular_part(w, anchor).imag() + s.imag();
    w.im_shift = static_cast<double>(im);
    w.b0.imag(-static_cast<double>(im - w.im_shift));
  }
  double err = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double re = evaluate_potential(w, samples.points[j]).real();
    if (inner_start && j >= *inner_start) re += w.jump;
    const double e = std::abs(samples.values[j] - re);
    err = std::isnan(e) ? INFINITY : std::max(err, e);
  }
  w.boundary_max_error = err;
  sol.samples = std::move(samples);
  return sol;
}

LaplaceSolution solve_interior(const BoundarySamples& s, const PolygonRegion& poly, Complex center,
                               const SolverConfig& cfg) {
  return solve_pipeline({Boundary{s, poly}}, center, cfg, {SolveRegion::Interior, true});
}

LaplaceSolution solve_exterior(const BoundarySamples& s, const PolygonRegion& poly, Complex center,
                               const SolverConfig& cfg) {
  return solve_pipeline({Boundary{s, poly}}, center, cfg, {SolveRegion::Exterior, true});
}

Complex evaluate_potential(const ComplexPotential& w, Complex p) {
  if (!finite(p)) {
    if (w.region == SolveRegion::Interior) throw InvalidInput("evaluate_potential: infinity is outside an interior solution");
    return assemble(w, p);
  }
  for (Complex pole : w.kept_poles) {
    if (p == pole) throw InvalidInput("evaluate_potential: point coincides with a kept pole");
  }
  if (w.smooth.kind == BasisKind::Reciprocal && p == w.smooth.center) {
    throw InvalidInput("evaluate_potential: point coincides with the reciprocal-basis center");
  }
  return assemble(w, p);
}

bool in_solution_region(const ComplexPotential& w, Complex p, double tol) {
  if (w.polygons.empty()) return true;
  const RegionClass outer = classify_point(p, w.polygons[0], tol);
  if (w.region == SolveRegion::Exterior) return outer == RegionClass::Exterior;
  if (outer != RegionClass::Interior) return false;
  return w.polygons.size() < 2 || classify_point(p, w.polygons[1], tol) == RegionClass::Exterior;
}

std::vector<FieldRow> evaluate_points(const ComplexPotential& w, const std::vector<Complex>& points) {
  std::vector<FieldRow> rows;
  rows.reserve(points.size());
  for (Complex p : points) {
    FieldRow row{p.real(), p.imag(), 0.0, 0.0, FieldMask::Outside};
    if (in_solution_region(w, p)) {
      try {
        const Complex value = evaluate_potential(w, p);
        row.re_w = value.real();
        row.im_w = value.imag();
        row.mask = finite(value) ? FieldMask::Valid : FieldMask::Error;
      } catch (const InvalidInput&) {
        row.mask = FieldMask::Error;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<FieldRow> evaluate_grid(const ComplexPotential& w, const GridWindow& window, std::size_t nx,
                                    std::size_t ny) {
  if (nx < 2 || ny < 2) throw InvalidInput("evaluate_grid: need nx, ny >= 2");
  std::vector<Complex> nodes;
  nodes.reserve(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double y = window.ymin + (window.ymax - window.ymin) * static_cast<double>(iy) / static_cast<double>(ny - 1);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double x =
          window.xmin + (window.xmax - window.xmin) * static_cast<double>(ix) / static_cast<double>(nx - 1);
      nodes.emplace_back(x, y);
    }
  }
  return evaluate_points(w, nodes);
}

}  // namespace harmonic_aaa
