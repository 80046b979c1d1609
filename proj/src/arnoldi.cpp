#include "harmonic_aaa/arnoldi.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "harmonic_aaa/errors.hpp"
#include "harmonic_aaa/linalg.hpp"

namespace harmonic_aaa {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Applies the stored recurrence to a column of arguments.
ComplexMatrix regenerate(const ComplexMatrix& h, std::size_t degree, const ComplexVector& args) {
  const auto n = static_cast<Eigen::Index>(degree);
  ComplexMatrix w(args.size(), n + 1);
  w.col(0).setOnes();
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexVector v = args.cwiseProduct(w.col(k));
    for (Eigen::Index j = 0; j <= k; ++j) v -= h(j, k) * w.col(j);
    w.col(k + 1) = v / h(k + 1, k);
  }
  return w;
}

}  // namespace

const char* to_string(BasisKind kind) { return kind == BasisKind::Forward ? "forward" : "reciprocal"; }

Complex basis_argument(BasisKind kind, Complex center, Complex z) {
  if (kind == BasisKind::Forward) return z - center;
  if (!finite(z)) return 0.0;
  if (z == center) throw InvalidInput("reciprocal basis evaluated at its center");
  return 1.0 / (z - center);
}

ArnoldiBasisFit arnoldi_fit(const ComplexVector& points, const ComplexVector& values, std::size_t degree,
                            Complex center, BasisKind kind) {
  const Eigen::Index m = points.size();
  const auto n = static_cast<Eigen::Index>(degree);
  if (values.size() != m) throw InvalidInput("arnoldi_fit: values and points differ in length");
  if (m < n + 1) {
    throw InvalidInput("arnoldi_fit: degree " + std::to_string(degree) + " needs at least " +
                       std::to_string(degree + 1) + " points, got " + std::to_string(m));
  }

  ComplexVector args(m);
  for (Eigen::Index j = 0; j < m; ++j) args(j) = basis_argument(kind, center, points(j));

  const double sqrt_m = std::sqrt(static_cast<double>(m));
  ComplexMatrix h = ComplexMatrix::Zero(n + 1, n);
  ComplexMatrix q(m, n + 1);
  q.col(0).setOnes();

  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexVector v = args.cwiseProduct(q.col(k));
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j <= k; ++j) {
        const Complex coef = q.col(j).dot(v) / static_cast<double>(m);
        h(j, k) += coef;
        v -= coef * q.col(j);
      }
    }
    const double norm = v.norm() / sqrt_m;
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NumericalFailure("arnoldi_fit: Krylov basis breaks down at column " + std::to_string(k + 1) +
                             " (degenerate points)");
    }
    h(k + 1, k) = norm;
    q.col(k + 1) = v / norm;
  }

  const auto ls = linalg::lstsq(q, values);

  ArnoldiBasisFit fit;
  fit.center = center;
  fit.degree = degree;
  fit.kind = kind;
  fit.hessenberg = std::move(h);
  fit.coeffs = ls.x;
  fit.residual_norm = ls.residual_norm;
  return fit;
}

ComplexMatrix arnoldi_basis(const ArnoldiBasisFit& fit, const ComplexVector& points) {
  ComplexVector args(points.size());
  for (Eigen::Index j = 0; j < points.size(); ++j) args(j) = basis_argument(fit.kind, fit.center, points(j));
  return regenerate(fit.hessenberg, fit.degree, args);
}

Complex arnoldi_eval(const ArnoldiBasisFit& fit, Complex p) {
  if (fit.kind == BasisKind::Forward && !finite(p)) {
    return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  }
  ComplexVector arg(1);
  arg(0) = basis_argument(fit.kind, fit.center, p);
  return (regenerate(fit.hessenberg, fit.degree, arg) * fit.coeffs)(0);
}

Complex ArnoldiBasisFit::operator()(Complex z) const { return arnoldi_eval(*this, z); }

}  // namespace harmonic_aaa
