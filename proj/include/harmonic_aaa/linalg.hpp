#pragma once

// Dense linear-algebra kernel shared by the fitting stages: smallest right
// singular vector, minimum-norm least squares and finite generalized
// eigenvalues of a (possibly singular) pencil.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "harmonic_aaa/errors.hpp"

namespace harmonic_aaa::linalg {

// Singular values below this fraction of the largest are treated as zero by
// lstsq (minimum-norm solution).
inline constexpr double kRankTolerance = 1e-13;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Scalar>
struct MinSingularPair {
  typename Eigen::NumTraits<Scalar>::Real sigma_min;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v;
};

/// Smallest singular value of `m` and a unit right singular vector for it.
///
/// Tall inputs are first reduced with a Householder QR; the singular values
/// and right singular vectors of R equal those of `m`.
template <typename Derived>
MinSingularPair<typename Derived::Scalar> svd_min_right_vector(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (m.cols() < 1 || m.rows() < m.cols()) {
    throw InvalidInput("svd_min_right_vector: need rows >= cols >= 1, got " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()));
  }
  if (!all_finite(m)) throw InvalidInput("svd_min_right_vector: non-finite entries");

  const Eigen::Index n = m.cols();
  Matrix reduced;
  if (m.rows() > 2 * n) {
    Eigen::HouseholderQR<Matrix> qr(m.derived());
    reduced = qr.matrixQR().topRows(n).template triangularView<Eigen::Upper>();
  } else {
    reduced = m.derived();
  }

  Eigen::BDCSVD<Matrix> svd(reduced, Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalFailure("svd_min_right_vector: SVD did not converge");

  MinSingularPair<Scalar> out;
  out.sigma_min = svd.singularValues()(n - 1);
  out.v = svd.matrixV().col(n - 1);
  return out;
}

template <typename Scalar>
struct LstsqResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  typename Eigen::NumTraits<Scalar>::Real residual_norm;
  Eigen::Index rank;
};

/// Minimum-norm minimizer of ||a x - rhs||_2. Real and complex matrices go
/// through the same template.
template <typename DerivedA, typename DerivedB>
LstsqResult<typename DerivedA::Scalar> lstsq(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& rhs) {
  using Scalar = typename DerivedA::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  if (a.rows() < 1) throw InvalidInput("lstsq: empty matrix");
  if (rhs.size() != a.rows()) {
    throw InvalidInput("lstsq: rhs has " + std::to_string(rhs.size()) + " entries, matrix has " +
                       std::to_string(a.rows()) + " rows");
  }
  if (!all_finite(a) || !all_finite(rhs)) throw InvalidInput("lstsq: non-finite entries");

  Vector b = rhs.template cast<Scalar>();
  LstsqResult<Scalar> out;
  if (a.cols() == 0) {
    out.x = Vector(0);
    out.residual_norm = b.norm();
    out.rank = 0;
    return out;
  }

  Eigen::BDCSVD<Matrix> svd(a.derived(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalFailure("lstsq: SVD did not converge");
  svd.setThreshold(kRankTolerance);
  out.x = svd.solve(b);
  out.residual_norm = (a.derived() * out.x - b).norm();
  out.rank = svd.rank();
  return out;
}

namespace detail {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline Eigen::Index numerical_rank(const Eigen::VectorXd& singular_values, double tol) {
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    if (singular_values(i) > tol) ++r;
  }
  return r;
}

inline CVector finite_only(const CVector& values) {
  CVector out(values.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::isfinite(values(i).real()) && std::isfinite(values(i).imag())) out(k++) = values(i);
  }
  out.conservativeResize(k);
  return out;
}

inline CVector standard_eigenvalues(const CMatrix& m) {
  if (m.rows() == 0) return CVector(0);
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalFailure("generalized_eigenvalues: eigensolver did not converge");
  return es.eigenvalues();
}

// Finite eigenvalues of e - lambda b. Singular b is handled by rotating b to
// diag(S, 0) and eliminating the constraint rows/columns that carry the
// infinite eigenvalues; each elimination strictly shrinks the pencil.
inline CVector pencil_eigenvalues(const CMatrix& e, const CMatrix& b, double scale) {
  const Eigen::Index n = e.rows();
  if (n == 0) return CVector(0);
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol = static_cast<double>(n) * eps * scale;

  Eigen::BDCSVD<CMatrix> svd_b(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd_b.info() != Eigen::Success) throw NumericalFailure("generalized_eigenvalues: SVD did not converge");
  const Eigen::VectorXd& sigma = svd_b.singularValues();
  const Eigen::Index r = numerical_rank(sigma, tol);

  const CMatrix et = svd_b.matrixU().adjoint() * e * svd_b.matrixV();
  if (r == n) {
    return finite_only(standard_eigenvalues(sigma.cwiseInverse().asDiagonal() * et));
  }

  const Eigen::Index s = n - r;
  const CMatrix a11 = et.topLeftCorner(r, r);
  const CMatrix a12 = et.topRightCorner(r, s);
  const CMatrix a21 = et.bottomLeftCorner(s, r);
  const CMatrix a22 = et.bottomRightCorner(s, s);

  Eigen::BDCSVD<CMatrix> svd22(a22, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Index k = numerical_rank(svd22.singularValues(), tol);

  // Rotate the trailing block to diag(D, 0).
  const CMatrix a12r = a12 * svd22.matrixV();
  const CMatrix a21r = svd22.matrixU().adjoint() * a21;
  const Eigen::VectorXd d = svd22.singularValues().head(k);

  CMatrix reduced = a11 - a12r.leftCols(k) * d.cwiseInverse().asDiagonal() * a21r.topRows(k);
  const Eigen::VectorXd s_inv = sigma.head(r).cwiseInverse();
  reduced = s_inv.asDiagonal() * reduced;
  if (k == s) return finite_only(standard_eigenvalues(reduced));

  // Remaining pencil: [[M - lambda I, G], [C, 0]].
  const CMatrix g = s_inv.asDiagonal() * a12r.rightCols(s - k);
  const CMatrix c = a21r.bottomRows(s - k);

  Eigen::BDCSVD<CMatrix> svd_c(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::BDCSVD<CMatrix> svd_g(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Index rank_c = numerical_rank(svd_c.singularValues(), tol);
  const Eigen::Index rank_g = numerical_rank(svd_g.singularValues(), tol);
  if (rank_c != rank_g || rank_c == 0) {
    throw NumericalFailure("generalized_eigenvalues: singular pencil (det(e - lambda b) vanishes identically)");
  }

  const CMatrix null_c = svd_c.matrixV().rightCols(r - rank_c);
  const CMatrix left_g = svd_g.matrixU().rightCols(r - rank_g);
  return pencil_eigenvalues(left_g.adjoint() * reduced * null_c, left_g.adjoint() * null_c, scale);
}

}  // namespace detail

/// All finite eigenvalues lambda with det(e - lambda b) = 0. Infinite
/// eigenvalues from a singular b are deflated, not returned.
template <typename DerivedE, typename DerivedB>
Eigen::VectorXcd generalized_eigenvalues(const Eigen::MatrixBase<DerivedE>& e, const Eigen::MatrixBase<DerivedB>& b) {
  if (e.rows() != e.cols() || b.rows() != b.cols() || e.rows() != b.rows()) {
    throw InvalidInput("generalized_eigenvalues: e and b must be square of equal size");
  }
  if (!all_finite(e) || !all_finite(b)) throw InvalidInput("generalized_eigenvalues: non-finite entries");

  const detail::CMatrix ec = e.template cast<std::complex<double>>();
  const detail::CMatrix bc = b.template cast<std::complex<double>>();
  const double scale = std::max({ec.norm(), bc.norm(), std::numeric_limits<double>::min()});
  return detail::pencil_eigenvalues(ec, bc, scale);
}

}  // namespace harmonic_aaa::linalg
