#include "harmonic_aaa/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "harmonic_aaa/errors.hpp"
#include "harmonic_aaa/linalg.hpp"

namespace harmonic_aaa {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double inf_norm(const ComplexVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Smallest right singular vector; short matrices are padded with zero rows
// (the extra null directions make sigma_min zero, which is the exact answer).
ComplexVector min_right_vector(const ComplexMatrix& a) {
  if (a.rows() >= a.cols()) return linalg::svd_min_right_vector(a).v;
  ComplexMatrix padded = ComplexMatrix::Zero(a.cols(), a.cols());
  padded.topRows(a.rows()) = a;
  return linalg::svd_min_right_vector(padded).v;
}

// Rows of the Loewner matrix (F_j - f_k) / (Z_j - z_k) for the listed samples.
ComplexMatrix loewner(const ComplexVector& points, const ComplexVector& values, const std::vector<Eigen::Index>& rows,
                      const ComplexVector& support, const ComplexVector& support_values) {
  ComplexMatrix a(static_cast<Eigen::Index>(rows.size()), support.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const Eigen::Index j = rows[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < support.size(); ++k) {
      a(i, k) = (values(j) - support_values(k)) / (points(j) - support(k));
    }
  }
  return a;
}

double deviation(const BarycentricApproximant& r, const ComplexVector& values, const ComplexVector& points) {
  double err = 0.0;
  for (Eigen::Index j = 0; j < points.size(); ++j) {
    const double e = std::abs(values(j) - r(points(j)));
    if (std::isnan(e)) return std::numeric_limits<double>::infinity();
    err = std::max(err, e);
  }
  return err;
}

// One Lawson pass: reweight the linearized residual by the current error and
// re-solve for independent numerator/denominator coefficients.
BarycentricApproximant lawson_pass(const BarycentricApproximant& r, const ComplexVector& values,
                                   const ComplexVector& points, const std::vector<Eigen::Index>& rows) {
  const Eigen::Index m = r.size();
  if (rows.empty()) return r;

  Eigen::VectorXd wt(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    wt(static_cast<Eigen::Index>(i)) = std::abs(values(rows[i]) - r(points(rows[i])));
  }
  const double wmax = wt.maxCoeff();
  if (!(wmax > 0.0) || !std::isfinite(wmax)) return r;
  wt /= wmax;

  ComplexMatrix a(static_cast<Eigen::Index>(rows.size()), 2 * m);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const Eigen::Index j = rows[static_cast<std::size_t>(i)];
    const double s = std::sqrt(wt(i));
    for (Eigen::Index k = 0; k < m; ++k) {
      const Complex c = 1.0 / (points(j) - r.support_points(k));
      a(i, k) = s * values(j) * c;
      a(i, m + k) = -s * c;
    }
  }
  const ComplexVector v = min_right_vector(a);

  BarycentricApproximant out = r;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Complex beta = v(k);
    const Complex alpha = v(m + k);
    out.weights(k) = beta;
    if (beta != Complex(0.0)) out.support_values(k) = alpha / beta;
  }
  return out;
}

// Drops support points whose weight is exactly zero.
BarycentricApproximant drop_zero_weights(const BarycentricApproximant& r) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    if (r.weights(k) != Complex(0.0)) keep.push_back(k);
  }
  if (keep.empty() || static_cast<Eigen::Index>(keep.size()) == r.size()) return r;
  BarycentricApproximant out;
  out.max_error = r.max_error;
  out.support_points = r.support_points(keep);
  out.support_values = r.support_values(keep);
  out.weights = r.weights(keep);
  return out;
}

ComplexVector arrowhead_eigenvalues(const ComplexVector& first_row, const ComplexVector& support) {
  const Eigen::Index m = support.size();
  ComplexMatrix e = ComplexMatrix::Zero(m + 1, m + 1);
  ComplexMatrix b = ComplexMatrix::Identity(m + 1, m + 1);
  b(0, 0) = 0.0;
  // Scaling the first row leaves the eigenvalues unchanged; unit norm keeps
  // tiny numerators (fits of rounding-level data) away from the rank cutoff.
  e.block(0, 1, 1, m) = first_row.transpose() / first_row.norm();
  e.block(1, 0, m, 1).setOnes();
  e.bottomRightCorner(m, m).diagonal() = support;
  return linalg::generalized_eigenvalues(e, b);
}

}  // namespace

Complex BarycentricApproximant::operator()(Complex z) const {
  const Eigen::Index m = size();
  if (m == 0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  if (!finite(z)) return (weights.array() * support_values.array()).sum() / weights.sum();

  Complex num = 0.0;
  Complex den = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Complex d = z - support_points(k);
    if (d == Complex(0.0)) return support_values(k);
    const Complex c = weights(k) / d;
    num += c * support_values(k);
    den += c;
  }
  return num / den;
}

ComplexVector BarycentricApproximant::at(const ComplexVector& z) const {
  ComplexVector out(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) out(j) = (*this)(z(j));
  return out;
}

Complex evaluate(const BarycentricApproximant& r, Complex z) { return r(z); }

BarycentricApproximant aaa(const ComplexVector& values, const ComplexVector& points, const AaaOptions& options) {
  const Eigen::Index n = points.size();
  if (n < 2) throw InvalidInput("aaa: need at least 2 samples, got " + std::to_string(n));
  if (values.size() != n) throw InvalidInput("aaa: values and points differ in length");
  if (options.mmax < 1) throw InvalidInput("aaa: mmax must be >= 1");
  if (!(options.tol > 0.0)) throw InvalidInput("aaa: tol must be positive");
  if (options.lawson != 0 && options.lawson != 1) throw InvalidInput("aaa: lawson must be 0 or 1");
  if (!values.allFinite() || !points.allFinite()) throw InvalidInput("aaa: non-finite samples");

  const double scale = inf_norm(values);
  const auto mmax = static_cast<Eigen::Index>(std::min<std::size_t>(options.mmax, static_cast<std::size_t>(n)));

  ComplexVector approx = ComplexVector::Constant(n, values.mean());
  std::vector<bool> is_support(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> support_index;
  ComplexVector support(0);
  ComplexVector support_values(0);
  ComplexVector weights(0);
  ComplexMatrix cauchy(n, mmax);
  double err = inf_norm(values - approx);

  for (Eigen::Index m = 1; m <= mmax; ++m) {
    // Largest deviation; lowest index wins ties.
    Eigen::Index pick = -1;
    double best = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (is_support[static_cast<std::size_t>(j)]) continue;
      const double dev = std::abs(values(j) - approx(j));
      const double key = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
      if (key > best) {
        best = key;
        pick = j;
      }
    }
    if (pick < 0) break;

    is_support[static_cast<std::size_t>(pick)] = true;
    support_index.push_back(pick);
    support.conservativeResize(m);
    support_values.conservativeResize(m);
    support(m - 1) = points(pick);
    support_values(m - 1) = values(pick);
    for (Eigen::Index j = 0; j < n; ++j) cauchy(j, m - 1) = 1.0 / (points(j) - points(pick));

    std::vector<Eigen::Index> rows;
    rows.reserve(static_cast<std::size_t>(n - m));
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!is_support[static_cast<std::size_t>(j)]) rows.push_back(j);
    }

    ComplexMatrix a(static_cast<Eigen::Index>(rows.size()), m);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Eigen::Index j = rows[static_cast<std::size_t>(i)];
      for (Eigen::Index k = 0; k < m; ++k) a(i, k) = (values(j) - support_values(k)) * cauchy(j, k);
    }
    weights = a.rows() > 0 ? min_right_vector(a) : ComplexVector::Ones(m) / std::sqrt(static_cast<double>(m));

    const ComplexVector wf = weights.cwiseProduct(support_values);
    approx = values;
    for (Eigen::Index j : rows) {
      const auto c = cauchy.row(j).head(m);
      approx(j) = (c * wf)(0) / (c * weights)(0);
    }
    err = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double dev = std::abs(values(j) - approx(j));
      err = std::isnan(dev) ? std::numeric_limits<double>::infinity() : std::max(err, dev);
    }
    if (options.trace) options.trace(static_cast<std::size_t>(m), err);
    if (err <= options.tol * scale) break;
  }

  BarycentricApproximant r;
  r.support_points = support;
  r.support_values = support_values;
  r.weights = weights;
  r.max_error = err;

  if (options.lawson == 1 && r.size() > 1) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!is_support[static_cast<std::size_t>(j)]) rows.push_back(j);
    }
    r = lawson_pass(r, values, points, rows);
    r.max_error = deviation(r, values, points);
  }
  return drop_zero_weights(r);
}

PoleData poles_residues_zeros(const BarycentricApproximant& r) {
  const Eigen::Index m = r.size();
  if (m < 2) throw InvalidInput("poles_residues_zeros: need at least 2 support points, got " + std::to_string(m));

  PoleData out;
  out.poles = arrowhead_eigenvalues(r.weights, r.support_points);
  // An identically zero numerator has no isolated zeros.
  const ComplexVector wf = r.weights.cwiseProduct(r.support_values);
  out.zeros = (wf.array() == Complex(0.0)).all() ? ComplexVector(0) : arrowhead_eigenvalues(wf, r.support_points);

  out.residues.resize(out.poles.size());
  for (Eigen::Index i = 0; i < out.poles.size(); ++i) {
    const Complex p = out.poles(i);
    Complex num = 0.0;
    Complex dden = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      const Complex c = 1.0 / (p - r.support_points(k));
      num += r.weights(k) * r.support_values(k) * c;
      dden -= r.weights(k) * c * c;
    }
    out.residues(i) = num / dden;
    if (!finite(out.residues(i))) {
      throw NumericalFailure("poles_residues_zeros: non-finite residue (pole on a support point)");
    }
  }
  return out;
}

BarycentricApproximant cleanup(const BarycentricApproximant& r, const ComplexVector& values,
                               const ComplexVector& points, double residue_tol) {
  if (r.size() < 2 || !(residue_tol > 0.0)) return r;
  if (values.size() != points.size()) throw InvalidInput("cleanup: values and points differ in length");

  const PoleData prz = poles_residues_zeros(r);
  const double threshold = residue_tol * inf_norm(values);

  std::vector<bool> drop(static_cast<std::size_t>(r.size()), false);
  std::size_t dropped = 0;
  for (Eigen::Index i = 0; i < prz.poles.size(); ++i) {
    if (std::abs(prz.residues(i)) >= threshold) continue;
    Eigen::Index nearest = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < r.size(); ++k) {
      if (drop[static_cast<std::size_t>(k)]) continue;
      const double d = std::abs(r.support_points(k) - prz.poles(i));
      if (d < best) {
        best = d;
        nearest = k;
      }
    }
    if (nearest >= 0 && dropped + 1 < static_cast<std::size_t>(r.size())) {
      drop[static_cast<std::size_t>(nearest)] = true;
      ++dropped;
    }
  }
  if (dropped == 0) return r;

  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    if (!drop[static_cast<std::size_t>(k)]) keep.push_back(k);
  }
  BarycentricApproximant out;
  out.support_points = r.support_points(keep);
  out.support_values = r.support_values(keep);

  std::vector<Eigen::Index> rows;
  for (Eigen::Index j = 0; j < points.size(); ++j) {
    if (!(out.support_points.array() == points(j)).any()) rows.push_back(j);
  }
  const ComplexMatrix a = loewner(points, values, rows, out.support_points, out.support_values);
  out.weights = a.rows() > 0 ? min_right_vector(a)
                             : ComplexVector(ComplexVector::Ones(out.support_points.size()));
  out = drop_zero_weights(out);
  out.max_error = deviation(out, values, points);
  return out;
}

}  // namespace harmonic_aaa
