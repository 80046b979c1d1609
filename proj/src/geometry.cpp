#include "harmonic_aaa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "harmonic_aaa/errors.hpp"

namespace harmonic_aaa {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// > 0 when p is left of the directed line a -> b.
double is_left(Complex a, Complex b, Complex p) {
  return (b.real() - a.real()) * (p.imag() - a.imag()) - (p.real() - a.real()) * (b.imag() - a.imag());
}

Boundary make_boundary(const std::vector<Complex>& raw, std::vector<Complex> vertices, Duplicates dup) {
  Boundary out;
  std::vector<Complex> loop;
  for (std::size_t i : dedup_closed_loop(raw)) loop.push_back(raw[i]);
  out.samples.points = dup == Duplicates::Keep ? raw : loop;
  out.polygon = vertices.empty() ? PolygonRegion(loop) : PolygonRegion(std::move(vertices));
  out.samples.counterclockwise = signed_area(loop) > 0.0;
  return out;
}

void append(std::vector<Complex>& dst, const std::vector<double>& s, Complex origin, Complex direction) {
  for (double t : s) dst.push_back(origin + t * direction);
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (n == 1) return {std::pow(10.0, lo)};
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  return out;
}

}  // namespace

const char* to_string(RegionClass c) {
  switch (c) {
    case RegionClass::Interior:
      return "interior";
    case RegionClass::Exterior:
      return "exterior";
    case RegionClass::OnBoundary:
      return "on-boundary";
  }
  return "?";
}

PolygonRegion::PolygonRegion(std::vector<Complex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw InvalidInput("polygon needs at least 3 vertices, got " + std::to_string(vertices_.size()));
  }
  if (!std::all_of(vertices_.begin(), vertices_.end(), finite)) throw InvalidInput("polygon has non-finite vertex");
  if (signed_area() == 0.0) throw InvalidInput("polygon has zero signed area");
}

double PolygonRegion::signed_area() const { return harmonic_aaa::signed_area(vertices_); }

void BoundarySamples::validate() const {
  if (points.size() < 3) throw InvalidInput("boundary needs at least 3 samples, got " + std::to_string(points.size()));
  if (!values.empty() && values.size() != points.size()) {
    throw InvalidInput("boundary has " + std::to_string(points.size()) + " points but " +
                       std::to_string(values.size()) + " values");
  }
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (!finite(points[j])) throw InvalidInput("non-finite boundary point at index " + std::to_string(j));
    if (!values.empty() && !std::isfinite(values[j])) {
      throw InvalidInput("non-finite boundary value at index " + std::to_string(j));
    }
  }
}

double signed_area(std::span<const Complex> loop) {
  double twice = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Complex a = loop[j];
    const Complex b = loop[(j + 1) % n];
    twice += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * twice;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

RegionClass classify_point(Complex p, const PolygonRegion& poly, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("classify_point: tol must be positive");
  if (poly.size() < 3) throw InvalidInput("classify_point: degenerate polygon");
  const auto& v = poly.vertices();
  const std::size_t n = v.size();

  for (std::size_t j = 0; j < n; ++j) {
    if (segment_distance(p, v[j], v[(j + 1) % n]) <= tol) return RegionClass::OnBoundary;
  }

  int winding = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex a = v[j];
    const Complex b = v[(j + 1) % n];
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && is_left(a, b, p) > 0.0) ++winding;
    } else if (b.imag() <= p.imag() && is_left(a, b, p) < 0.0) {
      --winding;
    }
  }
  return winding != 0 ? RegionClass::Interior : RegionClass::Exterior;
}

std::vector<double> colon_range(double first, double step, double last) {
  if (step == 0.0 || (last - first) / step < 0.0) return {};
  const double span = (last - first) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-10)) + 1;
  const bool on_grid = std::abs(span - std::round(span)) < 1e-10;
  const double end = on_grid ? last : first + static_cast<double>(count - 1) * step;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    // First half counts up from `first`, second half down from the end.
    out[k] = 2 * k < count ? first + static_cast<double>(k) * step
                           : end - static_cast<double>(count - 1 - k) * step;
  }
  return out;
}

std::vector<std::size_t> dedup_closed_loop(const std::vector<Complex>& points) {
  std::vector<std::size_t> kept;
  if (points.empty()) return kept;
  double scale = 0.0;
  for (Complex z : points) scale = std::max(scale, std::abs(z));
  const double tol = 1e-12 * (1.0 + scale);

  kept.push_back(0);
  for (std::size_t j = 1; j < points.size(); ++j) {
    if (std::abs(points[j] - points[kept.back()]) > tol) kept.push_back(j);
  }
  while (kept.size() > 1 && std::abs(points[kept.back()] - points[kept.front()]) <= tol) kept.pop_back();
  return kept;
}

std::size_t l_shape_raw_count(double step) {
  return 2 * colon_range(0, step, 2).size() + 4 * colon_range(0, step, 1).size();
}

Boundary l_shape_boundary(double step, Duplicates dup) {
  if (!(step > 0.0 && step < 1.0)) throw InvalidInput("l_shape_boundary: step must lie in (0, 1)");
  std::vector<Complex> z;
  append(z, colon_range(0, step, 2), 0.0, 1.0);
  append(z, colon_range(0, step, 1), 2.0, kI);
  append(z, colon_range(2, -step, 1), kI, 1.0);
  append(z, colon_range(1, step, 2), 1.0, kI);
  append(z, colon_range(1, -step, 0), 2.0 * kI, 1.0);
  append(z, colon_range(2, -step, 0), 0.0, kI);
  return make_boundary(z, {0.0, 2.0, {2.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}, {0.0, 2.0}}, dup);
}

Boundary blade_boundary(std::size_t n, Duplicates dup) {
  if (n < 16) throw InvalidInput("blade_boundary: need n >= 16");
  std::vector<Complex> z(n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = k + 1 == n ? two_pi : two_pi * static_cast<double>(k) / static_cast<double>(n - 1);
    const double c = std::cos(t);
    z[k] = Complex(2.0 * c, std::sin(t) + 2.0 * c * c * c);
  }
  return make_boundary(z, {}, dup);
}

DoubleBoundary double_boundary(double step, Duplicates dup) {
  if (!(step > 0.0 && step < 0.5)) throw InvalidInput("double_boundary: step must lie in (0, 0.5)");
  const double pi = std::numbers::pi;
  const double r2 = std::sqrt(2.0);
  const auto dir = [](double angle) { return std::exp(Complex(0.0, angle)); };

  const auto s1 = colon_range(0, step, 2);
  std::vector<Complex> z1;
  append(z1, s1, Complex(0.0, r2), dir(1.25 * pi));
  append(z1, s1, Complex(-r2, 0.0), dir(1.75 * pi));
  append(z1, s1, Complex(0.0, -r2), dir(0.25 * pi));
  append(z1, s1, Complex(r2, 0.0), dir(0.75 * pi));

  const auto s2 = colon_range(0, step, 0.5);
  std::vector<Complex> z2;
  append(z2, s2, Complex(-0.5, -0.5), 1.0);
  append(z2, s2, Complex(0.0, -0.5), dir(0.5 * pi));
  append(z2, s2, Complex(0.0, 0.0), dir(pi));
  append(z2, s2, Complex(-0.5, 0.0), dir(1.5 * pi));

  DoubleBoundary out;
  out.outer = make_boundary(z1, {Complex(0.0, r2), Complex(-r2, 0.0), Complex(0.0, -r2), Complex(r2, 0.0)}, dup);
  out.inner = make_boundary(z2, {Complex(-0.5, -0.5), Complex(0.0, -0.5), Complex(0.0, 0.0), Complex(-0.5, 0.0)}, dup);
  return out;
}

BoundarySamples cluster_corners(const BoundarySamples& s, const PolygonRegion& poly, std::size_t per_side,
                                double min_exp) {
  if (per_side < 1) throw InvalidInput("cluster_corners: per_side must be >= 1");
  if (!(min_exp < 0.0)) throw InvalidInput("cluster_corners: min_exp must be negative");
  if (s.points.size() < 3) throw InvalidInput("cluster_corners: need at least 3 samples");
  const bool with_values = s.has_values();

  const std::size_t n = s.points.size();
  std::vector<double> arc(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) arc[j + 1] = arc[j] + std::abs(s.points[(j + 1) % n] - s.points[j]);
  const double perimeter = arc[n];
  const double arc_tol = 1e-12 * perimeter;

  struct Entry {
    double arc;
    Complex point;
    double value;
  };
  std::vector<Entry> entries;
  entries.reserve(n);
  for (std::size_t j = 0; j < n; ++j) entries.push_back({arc[j], s.points[j], with_values ? s.values[j] : 0.0});

  const auto displacements = logspace(min_exp, 0.0, per_side);
  const auto& v = poly.vertices();
  const std::size_t nv = v.size();

  std::vector<bool> is_corner(n, false);
  for (Complex corner : v) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(s.points[j] - corner) <= 1e-12 * (1.0 + std::abs(corner))) is_corner[j] = true;
    }
  }
  // Unwrapped sample index k -> arclength measured continuously past the seam.
  const auto arc_at = [&](long k) {
    const long nn = static_cast<long>(n);
    const long q = (k % nn + nn) % nn;
    return arc[static_cast<std::size_t>(q)] + perimeter * static_cast<double>((k - q) / nn);
  };
  const auto index_of = [&](long k) {
    const long nn = static_cast<long>(n);
    return static_cast<std::size_t>((k % nn + nn) % nn);
  };
  // Up to four distinct-arclength samples around [lo, lo+1] that stay on one edge.
  const auto interpolate = [&](long lo, double sigma) {
    long first = lo;
    for (std::size_t step = 0; step < n && !is_corner[index_of(first)]; ++step) --first;
    long last = lo + 1;
    for (std::size_t step = 0; step < n && !is_corner[index_of(last)]; ++step) ++last;
    std::vector<long> nodes;
    for (long k = std::max(first, lo - 1); k <= last && nodes.size() < 4; ++k) {
      if (!nodes.empty() && arc_at(k) - arc_at(nodes.back()) <= arc_tol) continue;
      nodes.push_back(k);
    }
    // Extend backwards if the edge ends before four nodes were collected.
    for (long k = std::max(first, lo - 1) - 1; k >= first && nodes.size() < 4; --k) {
      if (arc_at(nodes.front()) - arc_at(k) <= arc_tol) continue;
      nodes.insert(nodes.begin(), k);
    }
    double value = 0.0;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      double basis = 1.0;
      for (std::size_t b = 0; b < nodes.size(); ++b) {
        if (a != b) basis *= (sigma - arc_at(nodes[b])) / (arc_at(nodes[a]) - arc_at(nodes[b]));
      }
      value += basis * s.values[index_of(nodes[a])];
    }
    return value;
  };

  for (std::size_t c = 0; c < nv; ++c) {
    const Complex corner = v[c];
    std::size_t at = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(s.points[j] - corner) <= 1e-12 * (1.0 + std::abs(corner))) {
        at = j;
        break;
      }
    }
    if (at == n) throw InvalidInput("cluster_corners: polygon corner " + std::to_string(c) + " is not a sample");

    const double len_next = std::abs(v[(c + 1) % nv] - corner);
    const double len_prev = std::abs(corner - v[(c + nv - 1) % nv]);

    for (int side : {-1, +1}) {
      const double edge = side > 0 ? len_next : len_prev;
      for (double d : displacements) {
        if (d >= edge - arc_tol) continue;
        double sigma = arc[at] + side * d;
        if (sigma < 0.0) sigma += perimeter;
        if (sigma >= perimeter) sigma -= perimeter;

        const auto hi_it = std::upper_bound(arc.begin(), arc.end(), sigma);
        const std::size_t hi = static_cast<std::size_t>(hi_it - arc.begin());
        const std::size_t lo = hi - 1;
        if (sigma - arc[lo] <= arc_tol || arc[hi] - sigma <= arc_tol) continue;

        const double t = (sigma - arc[lo]) / (arc[hi] - arc[lo]);
        const Complex a = s.points[lo];
        const Complex b = s.points[hi % n];
        double value = 0.0;
        if (with_values) value = interpolate(static_cast<long>(lo), sigma);
        entries.push_back({sigma, a + t * (b - a), value});
      }
    }
  }

  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.arc < b.arc; });

  BoundarySamples out;
  out.counterclockwise = s.counterclockwise;
  for (const Entry& e : entries) {
    if (!out.points.empty() &&
        std::abs(e.point - out.points.back()) <= 1e-12 * (1.0 + std::abs(e.point))) {
      continue;
    }
    out.points.push_back(e.point);
    if (with_values) out.values.push_back(e.value);
  }
  return out;
}

}  // namespace harmonic_aaa
