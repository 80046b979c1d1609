#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harmonic_aaa/errors.hpp"
#include "harmonic_aaa/geometry.hpp"
#include "support.hpp"

using namespace harmonic_aaa;

namespace {

PolygonRegion unit_square() { return PolygonRegion({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

// Shoelace formula, written independently of the library.
double shoelace(const std::vector<Complex>& v) {
  double a = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Complex p = v[k];
    const Complex q = v[(k + 1) % v.size()];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

bool on_polygon_edges(Complex p, const PolygonRegion& poly, double tol) {
  const auto& v = poly.vertices();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (segment_distance(p, v[k], v[(k + 1) % v.size()]) <= tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("classify_point on the unit square") {
  const auto sq = unit_square();
  CHECK(classify_point({0.5, 0.5}, sq) == RegionClass::Interior);
  CHECK(classify_point({10, 10}, sq) == RegionClass::Exterior);
  CHECK(classify_point({1, 1}, sq, 1e-16) == RegionClass::OnBoundary);
  CHECK(classify_point({0.5, 0.0}, sq) == RegionClass::OnBoundary);
  CHECK(classify_point({0.5, -1e-9}, sq) == RegionClass::Exterior);
  // Clockwise traversal describes the same set.
  const PolygonRegion cw({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  CHECK(classify_point({0.5, 0.5}, cw) == RegionClass::Interior);
}

TEST_CASE("PolygonRegion rejects degenerate input") {
  CHECK_THROWS_AS(PolygonRegion({{0, 0}, {1, 0}}), InvalidInput);
  CHECK_THROWS_AS(PolygonRegion({{0, 0}, {1, 0}, {2, 0}}), InvalidInput);
  CHECK_THROWS_AS(PolygonRegion({{0, 0}, {1, 0}, {NAN, 1}}), InvalidInput);
}

TEST_CASE("point just left of each edge midpoint is interior") {
  for (const auto& poly : {l_shape_boundary(0.1).polygon, double_boundary(0.1).outer.polygon, unit_square()}) {
    REQUIRE(poly.signed_area() > 0.0);
    const auto& v = poly.vertices();
    for (std::size_t k = 0; k < v.size(); ++k) {
      const Complex a = v[k];
      const Complex b = v[(k + 1) % v.size()];
      const Complex inward = kI * (b - a) / std::abs(b - a);
      CHECK(classify_point(0.5 * (a + b) + 1e-9 * inward, poly) == RegionClass::Interior);
      CHECK(classify_point(0.5 * (a + b) - 1e-9 * inward, poly) == RegionClass::Exterior);
    }
  }
}

TEST_CASE("colon_range follows the a:step:b convention") {
  const auto r = colon_range(0.0, 0.01, 2.0);
  CHECK(r.size() == 201);
  CHECK(r.front() == 0.0);
  CHECK(r.back() == 2.0);
  const auto down = colon_range(2.0, -0.01, 1.0);
  CHECK(down.size() == 101);
  CHECK(down.back() == 1.0);
  CHECK(colon_range(0.0, 0.3, 1.0).size() == 4);
  CHECK(colon_range(1.0, 0.1, 0.0).empty());
}

TEST_CASE("l_shape_boundary") {
  CHECK(l_shape_raw_count(0.01) == 806);
  const Boundary raw = l_shape_boundary(0.01, Duplicates::Keep);
  CHECK(raw.samples.size() == 806);
  const Boundary b = l_shape_boundary(0.01);
  CHECK(b.samples.size() == 800);
  CHECK(b.samples.counterclockwise);
  CHECK_FALSE(b.samples.has_values());

  const std::vector<Complex> expect{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  REQUIRE(b.polygon.vertices().size() == expect.size());
  for (std::size_t k = 0; k < expect.size(); ++k) CHECK(b.polygon.vertices()[k] == expect[k]);
  CHECK(shoelace(expect) == doctest::Approx(3.0));

  for (std::size_t j = 1; j < b.samples.size(); ++j) CHECK(b.samples.points[j] != b.samples.points[j - 1]);
  CHECK(b.samples.points.front() != b.samples.points.back());

  const Boundary coarse = l_shape_boundary(0.5);
  for (Complex p : coarse.samples.points) CHECK(on_polygon_edges(p, coarse.polygon, 1e-15));
}

TEST_CASE("blade_boundary") {
  const Boundary b = blade_boundary(500);
  CHECK(b.samples.size() == 499);
  CHECK(std::abs(b.samples.points[0] - Complex(2, 2)) < 1e-15);
  CHECK(b.polygon.vertices().size() == 499);
  CHECK(blade_boundary(500, Duplicates::Keep).samples.size() == 500);

  const Boundary quarter = blade_boundary(17);  // theta = k * pi / 8
  CHECK(std::abs(quarter.samples.points[4] - Complex(0, 1)) < 1e-15);
  CHECK(quarter.polygon.signed_area() > 0.0);
}

TEST_CASE("double_boundary") {
  const DoubleBoundary d = double_boundary(0.01, Duplicates::Keep);
  CHECK(d.outer.samples.size() == 804);
  CHECK(d.inner.samples.size() == 204);
  CHECK(shoelace(d.outer.polygon.vertices()) == doctest::Approx(4.0));
  CHECK(std::abs(shoelace(d.inner.polygon.vertices())) == doctest::Approx(0.25));
  const double s2 = std::numbers::sqrt2;
  const std::vector<Complex> outer{{0, s2}, {-s2, 0}, {0, -s2}, {s2, 0}};
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(d.outer.polygon.vertices()[k] - outer[k]) < 1e-15);

  const DoubleBoundary dd = double_boundary(0.01);
  CHECK(dd.outer.samples.size() < 804);
  CHECK(dd.inner.samples.size() == 200);
}

TEST_CASE("generator samples classify as on-boundary") {
  const auto check_all = [](const Boundary& b) {
    for (Complex p : b.samples.points) CHECK(classify_point(p, b.polygon, 1e-12) == RegionClass::OnBoundary);
  };
  check_all(l_shape_boundary(0.01));
  check_all(blade_boundary(500));
  const DoubleBoundary d = double_boundary(0.05);
  check_all(d.outer);
  check_all(d.inner);
}

TEST_CASE("dedup_closed_loop") {
  const std::vector<Complex> pts{{0, 0}, {1, 0}, {1, 0}, {1, 1e-17}, {1, 1}, {0, 0}};
  const auto keep = dedup_closed_loop(pts);
  CHECK(keep == std::vector<std::size_t>{0, 1, 4});
}

TEST_CASE("cluster_corners on the L-shape") {
  Boundary b = l_shape_boundary(0.01);
  test_support::set_values(b, test_support::x_squared);
  const BoundarySamples c = cluster_corners(b.samples, b.polygon, 50, -6.0);
  // 10^0 = 1 reaches (or passes) the adjacent corner on unit edges, and a few
  // displacements land on existing samples; everything else is new.
  CHECK(c.size() > b.samples.size() + 500);
  CHECK(c.size() <= b.samples.size() + 600);

  // Input samples are a subsequence, in traversal order.
  std::size_t next = 0;
  for (Complex p : c.points) {
    if (next < b.samples.size() && p == b.samples.points[next]) ++next;
  }
  CHECK(next == b.samples.size());

  // On-edge and exact for quadratic data.
  for (std::size_t j = 0; j < c.size(); ++j) {
    CHECK(classify_point(c.points[j], b.polygon, 1e-12) == RegionClass::OnBoundary);
    CHECK(std::abs(c.values[j] - test_support::x_squared(c.points[j])) < 1e-13);
  }
}

TEST_CASE("cluster_corners: per_side 1 and constant data") {
  BoundarySamples s;
  s.points = {{0, 0}, {0.5, 0}, {1, 0}, {1, 0.5}, {1, 1}, {0.5, 1}, {0, 1}, {0, 0.5}};
  s.values.assign(s.points.size(), 3.25);
  const auto sq = PolygonRegion({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const BoundarySamples c = cluster_corners(s, sq, 1, -6.0);
  CHECK(c.size() == s.size() + 8);
  for (double v : c.values) CHECK(v == doctest::Approx(3.25).epsilon(1e-15));
  // Points at distance 1e-6 from the corner 0 along both incident edges.
  int near_origin = 0;
  for (Complex p : c.points) {
    if (std::abs(std::abs(p) - 1e-6) < 1e-15) ++near_origin;
  }
  CHECK(near_origin == 2);

  CHECK_THROWS_AS(cluster_corners(s, PolygonRegion({{0, 0}, {2, 0}, {2, 2}}), 1, -6.0), InvalidInput);
  CHECK_THROWS_AS(cluster_corners(s, sq, 0, -6.0), InvalidInput);
  CHECK_THROWS_AS(cluster_corners(s, sq, 1, 0.5), InvalidInput);
}
