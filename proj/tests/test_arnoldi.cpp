#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harmonic_aaa/arnoldi.hpp"
#include "harmonic_aaa/errors.hpp"
#include "harmonic_aaa/linalg.hpp"
#include "support.hpp"

using namespace harmonic_aaa;

namespace {

ComplexVector disk_points(Eigen::Index n, double radius, Complex center) {
  ComplexVector z(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    z(k) = center + radius * std::sqrt((k + 0.5) / n) * std::polar(1.0, 2.399963229728653 * k);
  }
  return z;
}

}  // namespace

TEST_CASE("arnoldi_fit reproduces polynomials in the span") {
  const Complex c(0.3, -0.2);
  const ComplexVector z = disk_points(40, 1.0, c);
  ComplexVector v(z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) v(k) = (z(k) - c) * (z(k) - c);
  const auto fit = arnoldi_fit(z, v, 2, c, BasisKind::Forward);
  for (Complex p : {Complex(0.1, 0.1), Complex(-0.5, 0.4), Complex(0.9, -0.3)}) {
    CHECK(std::abs(arnoldi_eval(fit, p) - (p - c) * (p - c)) < 1e-12);
  }
  CHECK(fit.residual_norm < 1e-12);
}

TEST_CASE("arnoldi_fit: degree 0 is the mean, constants stay constant") {
  const ComplexVector z = test_support::unit_circle(16);
  ComplexVector v(16);
  for (Eigen::Index k = 0; k < 16; ++k) v(k) = static_cast<double>(k);
  const auto mean = arnoldi_fit(z, v, 0, 0.0, BasisKind::Forward);
  CHECK(std::abs(arnoldi_eval(mean, {3.0, 4.0}) - 7.5) < 1e-13);

  const auto five = arnoldi_fit(z, ComplexVector::Constant(16, 5.0), 6, 0.0, BasisKind::Forward);
  for (Complex p : {Complex(0, 0), Complex(0.7, -0.1), Complex(-0.2, 0.9)}) CHECK(std::abs(five(p) - 5.0) < 1e-12);
}

TEST_CASE("arnoldi basis is orthogonal with column norms sqrt(M)") {
  const Complex c(0.5, 0.5);
  const ComplexVector z = disk_points(300, 1.5, c);
  ComplexVector v(z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) v(k) = std::exp(z(k));
  for (BasisKind kind : {BasisKind::Forward, BasisKind::Reciprocal}) {
    const ComplexVector pts = kind == BasisKind::Forward ? z : ComplexVector(z.array() + Complex(4.0, 0.0));
    const auto fit = arnoldi_fit(pts, v, 17, c, kind);
    const ComplexMatrix q = arnoldi_basis(fit, pts);
    const double m = static_cast<double>(pts.size());
    const ComplexMatrix gram = q.adjoint() * q / m - ComplexMatrix::Identity(18, 18);
    CHECK(gram.cwiseAbs().maxCoeff() < 1e-10);

    // Lower Hessenberg part is zero.
    for (Eigen::Index r = 0; r < fit.hessenberg.rows(); ++r) {
      for (Eigen::Index col = 0; col + 1 < r; ++col) CHECK(fit.hessenberg(r, col) == Complex(0.0));
    }
    // Evaluation on the fitting set equals Q * coeffs.
    const ComplexVector qa = q * fit.coeffs;
    for (Eigen::Index k = 0; k < pts.size(); ++k) {
      CHECK(std::abs(arnoldi_eval(fit, pts(k)) - qa(k)) <= 1e-12 * std::max(1.0, std::abs(qa(k))));
    }
  }
}

TEST_CASE("arnoldi residual beats the monomial Vandermonde oracle on clustered nodes") {
  const Eigen::Index n = 200;
  ComplexVector x(n);
  ComplexVector f(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    x(k) = 1.0 - 1e-6 * 0.5 * (1.0 - std::cos(std::numbers::pi * k / (n - 1)));
    f(k) = std::cos(3e6 * (x(k).real() - 1.0));
  }
  const std::size_t degree = 30;
  const auto fit = arnoldi_fit(x, f, degree, 0.0, BasisKind::Forward);

  ComplexMatrix vander(n, degree + 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex p = 1.0;
    for (std::size_t j = 0; j <= degree; ++j) {
      vander(k, static_cast<Eigen::Index>(j)) = p;
      p *= x(k);
    }
  }
  const ComplexVector coef = vander.colPivHouseholderQr().solve(f);
  const double vander_residual = (vander * coef - f).norm();
  CHECK(fit.residual_norm <= vander_residual);
  CHECK(fit.residual_norm < 1e-6 * f.norm());
}

TEST_CASE("reciprocal basis: value at infinity from the recurrence at argument 0") {
  const Complex c(0.5, 0.5);
  ComplexVector z = test_support::unit_circle(30);
  z.array() = z.array() * 2.0 + c;
  ComplexVector v(z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) v(k) = 1.0 / (z(k) - c) + 0.25;
  const auto fit = arnoldi_fit(z, v, 2, c, BasisKind::Reciprocal);
  const auto& h = fit.hessenberg;
  const Complex q1 = -h(0, 0) / h(1, 0);
  const Complex q2 = (-h(0, 1) - h(1, 1) * q1) / h(2, 1);
  const Complex by_hand = fit.coeffs(0) + fit.coeffs(1) * q1 + fit.coeffs(2) * q2;
  CHECK(std::abs(arnoldi_eval(fit, Complex(INFINITY, 0.0)) - by_hand) < 1e-14);
  CHECK(std::abs(by_hand - 0.25) < 1e-12);
  CHECK_THROWS_AS(arnoldi_eval(fit, c), InvalidInput);
  CHECK(std::isnan(arnoldi_eval(arnoldi_fit(z, v, 2, c, BasisKind::Forward), Complex(INFINITY, 0.0)).real()));
}

TEST_CASE("reciprocal fit equals a forward fit in the reciprocal arguments") {
  const Complex c(0.2, 0.1);
  ComplexVector z = test_support::unit_circle(60);
  z.array() = z.array() * 1.7 + c;
  ComplexVector v(z.size());
  ComplexVector s(z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    v(k) = std::log(std::abs(z(k) - 0.3));
    s(k) = 1.0 / (z(k) - c);
  }
  const auto rec = arnoldi_fit(z, v, 12, c, BasisKind::Reciprocal);
  const auto fwd = arnoldi_fit(s, v, 12, 0.0, BasisKind::Forward);
  CHECK(std::abs(rec.residual_norm - fwd.residual_norm) < 1e-12);
  CHECK(std::abs(rec({3.0, 1.0}) - fwd(1.0 / (Complex(3.0, 1.0) - c))) < 1e-12);
}

TEST_CASE("arnoldi_fit preconditions") {
  const ComplexVector same = ComplexVector::Constant(10, Complex(1.0, 1.0));
  CHECK_THROWS_AS(arnoldi_fit(same, ComplexVector::Ones(10), 3, 0.0, BasisKind::Forward), NumericalFailure);
  CHECK_THROWS_AS(arnoldi_fit(test_support::unit_circle(3), ComplexVector::Ones(3), 5, 0.0, BasisKind::Forward),
                  InvalidInput);
  CHECK_THROWS_AS(arnoldi_fit(test_support::unit_circle(8), ComplexVector::Ones(7), 2, 0.0, BasisKind::Forward),
                  InvalidInput);
  ComplexVector hit = test_support::unit_circle(8);
  hit(3) = 0.0;
  CHECK_THROWS_AS(arnoldi_fit(hit, ComplexVector::Ones(8), 2, 0.0, BasisKind::Reciprocal), InvalidInput);
}
