#include <doctest.h>

#include <cmath>

#include "harmonic_aaa/errors.hpp"
#include "harmonic_aaa/rational.hpp"
#include "support.hpp"

using namespace harmonic_aaa;
using test_support::min_distance;
using test_support::unit_circle;

namespace {

template <typename F>
ComplexVector sample(const ComplexVector& z, F f) {
  ComplexVector v(z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) v(k) = f(z(k));
  return v;
}

template <typename F>
double max_deviation(const BarycentricApproximant& r, const ComplexVector& z, F f) {
  double e = 0.0;
  for (Eigen::Index k = 0; k < z.size(); ++k) e = std::max(e, std::abs(r(z(k)) - f(z(k))));
  return e;
}

// Points on the segment [-1, 1] shifted off the real axis.
ComplexVector line_points(Eigen::Index n) {
  ComplexVector z(n);
  for (Eigen::Index k = 0; k < n; ++k) z(k) = Complex(-1.0 + 2.0 * k / (n - 1), 0.1);
  return z;
}

}  // namespace

TEST_CASE("aaa: constant data") {
  const ComplexVector z = unit_circle(100);
  const ComplexVector f = ComplexVector::Ones(100);
  const auto r = aaa(f, z);
  CHECK(r.size() == 1);
  CHECK(r.max_error < 1e-15);
  CHECK(r({0.3, -0.2}) == Complex(1.0));
  CHECK(evaluate(r, {5.0, 5.0}) == Complex(1.0));
}

TEST_CASE("aaa: f(z) = z is reproduced exactly") {
  const ComplexVector z = unit_circle(64);
  const auto id = [](Complex x) { return x; };
  const auto r = aaa(sample(z, id), z);
  CHECK(r.size() <= 3);
  CHECK(r.max_error < 1e-13);
  CHECK(std::abs(evaluate(r, {0.3, 0.4}) - Complex(0.3, 0.4)) < 1e-13);
}

TEST_CASE("aaa: two-pole rational") {
  const ComplexVector z = unit_circle(128);
  const auto f = [](Complex x) { return 1.0 / (x - 0.5) + 1.0 / (x + 2.0); };
  const auto r = aaa(sample(z, f), z);
  CHECK(r.size() <= 4);
  CHECK(max_deviation(r, z, f) < 1e-12);
  CHECK(r.max_error < 1e-12);
}

TEST_CASE("aaa: interpolation and preconditions") {
  const ComplexVector z = line_points(200);
  const auto f = [](Complex x) { return std::exp(x) / (x - Complex(0.2, 0.5)); };
  const auto r = aaa(sample(z, f), z);
  for (Eigen::Index k = 0; k < r.size(); ++k) CHECK(r(r.support_points(k)) == r.support_values(k));

  CHECK_THROWS_AS(aaa(ComplexVector::Ones(1), ComplexVector::Zero(1)), InvalidInput);
  CHECK_THROWS_AS(aaa(ComplexVector::Ones(3), unit_circle(4)), InvalidInput);
  AaaOptions bad;
  bad.lawson = 2;
  CHECK_THROWS_AS(aaa(sample(z, f), z, bad), InvalidInput);
  bad.lawson = 0;
  bad.tol = 0.0;
  CHECK_THROWS_AS(aaa(sample(z, f), z, bad), InvalidInput);
}

TEST_CASE("aaa: greedy trace is non-increasing on smooth data") {
  const ComplexVector z = line_points(300);
  const auto f = [](Complex x) { return std::tan(x); };
  std::vector<double> trace;
  AaaOptions opts;
  opts.trace = [&](std::size_t, double err) { trace.push_back(err); };
  const auto r = aaa(sample(z, f), z, opts);
  REQUIRE(trace.size() >= 3);
  for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] <= trace[k - 1] * (1.0 + 1e-12));
  CHECK(r.max_error < 1e-12);
}

TEST_CASE("aaa: mmax caps the support count and lawson pass keeps accuracy") {
  const ComplexVector z = line_points(300);
  const auto f = [](Complex x) { return std::abs(x.real()) + 0.0 * x; };
  AaaOptions opts;
  opts.mmax = 10;
  const auto r = aaa(sample(z, f), z, opts);
  CHECK(r.size() == 10);
  opts.lawson = 1;
  const auto rl = aaa(sample(z, f), z, opts);
  CHECK(rl.size() == 10);
  CHECK(std::isfinite(rl.max_error));
  CHECK(rl.max_error < 1.0);
}

TEST_CASE("poles_residues_zeros: simple pole") {
  const ComplexVector z = unit_circle(100);
  const auto r = aaa(sample(z, [](Complex x) { return 1.0 / (x - 0.5); }), z);
  const auto prz = poles_residues_zeros(r);
  CHECK(prz.poles.size() == r.size() - 1);
  REQUIRE(prz.poles.size() >= 1);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < prz.poles.size(); ++k) {
    if (std::abs(prz.poles(k) - 0.5) < std::abs(prz.poles(best) - 0.5)) best = k;
  }
  CHECK(std::abs(prz.poles(best) - 0.5) < 1e-10);
  CHECK(std::abs(prz.residues(best) - 1.0) < 1e-8);
}

TEST_CASE("poles_residues_zeros: pole and zero of (z-1)/(z+1)") {
  ComplexVector z(100);
  for (Eigen::Index k = 0; k < 100; ++k) z(k) = 3.0 * std::polar(1.0, 2.0 * 3.141592653589793 * k / 100.0);
  const auto r = aaa(sample(z, [](Complex x) { return (x - 1.0) / (x + 1.0); }), z);
  const auto prz = poles_residues_zeros(r);
  CHECK(min_distance(-1.0, prz.poles) < 1e-10);
  CHECK(min_distance(1.0, prz.zeros) < 1e-10);

  BarycentricApproximant constant;
  constant.support_points = ComplexVector::Zero(1);
  constant.support_values = ComplexVector::Ones(1);
  constant.weights = ComplexVector::Ones(1);
  CHECK_THROWS_AS(poles_residues_zeros(constant), InvalidInput);
}

TEST_CASE("poles_residues_zeros: planted partial fractions") {
  const std::vector<Complex> poles{{1.5, 0.2}, {-1.3, 0.8}, {0.1, -1.6}};
  const std::vector<Complex> res{{1.0, 0.5}, {-0.7, 0.0}, {0.0, 2.0}};
  const auto f = [&](Complex x) {
    Complex s = 0.25;
    for (std::size_t k = 0; k < poles.size(); ++k) s += res[k] / (x - poles[k]);
    return s;
  };
  const ComplexVector z = unit_circle(200);
  const auto r = aaa(sample(z, f), z);
  const auto prz = poles_residues_zeros(r);
  for (std::size_t k = 0; k < poles.size(); ++k) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < prz.poles.size(); ++j) {
      if (std::abs(prz.poles(j) - poles[k]) < std::abs(prz.poles(best) - poles[k])) best = j;
    }
    CHECK(std::abs(prz.poles(best) - poles[k]) < 1e-8);
    CHECK(std::abs(prz.residues(best) - res[k]) < 1e-8);
  }
}

TEST_CASE("cleanup") {
  const ComplexVector z = unit_circle(200);
  const auto f = [](Complex x) { return 1.0 / (x - 2.0); };
  const ComplexVector fz = sample(z, f);

  // A clean low-order fit is left alone.
  const auto clean = aaa(fz, z);
  const auto same = cleanup(clean, fz, z);
  CHECK(same.size() == clean.size());
  CHECK((same.weights - clean.weights).norm() == 0.0);
  CHECK(cleanup(clean, fz, z, 0.0).size() == clean.size());

  // Forcing far more support points than needed yields near-zero residues.
  AaaOptions opts;
  opts.tol = 1e-30;
  opts.mmax = 20;
  const auto over = aaa(fz, z, opts);
  REQUIRE(over.size() > 10);  // exactly zero weights are dropped
  const auto prz = poles_residues_zeros(over);
  const auto tidy = cleanup(over, fz, z);
  CHECK(tidy.size() < over.size());
  CHECK(poles_residues_zeros(tidy).poles.size() < prz.poles.size());
  double e = 0.0;
  for (Eigen::Index k = 0; k < z.size(); ++k) e = std::max(e, std::abs(tidy(z(k)) - fz(k)));
  CHECK(e < 1e-10);
}

TEST_CASE("evaluate: non-finite argument gives the limit at infinity") {
  const ComplexVector z = unit_circle(50);
  const auto r = aaa(sample(z, [](Complex x) { return (2.0 * x + 1.0) / (x - 3.0); }), z);
  CHECK(std::abs(r(Complex(INFINITY, 0.0)) - 2.0) < 1e-10);
}
