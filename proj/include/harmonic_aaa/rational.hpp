#pragma once

#include <cstddef>
#include <functional>

#include "harmonic_aaa/types.hpp"

namespace harmonic_aaa {

/// Rational function in barycentric form
///
///   r(z) = sum_k w_k f_k / (z - t_k)  /  sum_k w_k / (z - t_k)
///
/// over support points t_k with support values f_k and weights w_k.
struct BarycentricApproximant {
  ComplexVector support_points;
  ComplexVector support_values;
  ComplexVector weights;
  double max_error = 0.0;  // infinity-norm deviation on the fitting set

  Eigen::Index size() const { return support_points.size(); }

  /// Barycentric quotient. Exactly the stored value at a support point; the
  /// limit sum(w f) / sum(w) for non-finite z.
  Complex operator()(Complex z) const;
  ComplexVector at(const ComplexVector& z) const;
};

struct PoleData {
  ComplexVector poles;
  ComplexVector residues;
  ComplexVector zeros;
};

struct AaaOptions {
  std::size_t mmax = 100;
  double tol = 1e-13;
  int lawson = 0;  // 0 or 1 reweighting passes
  // Called after every greedy step with (support count, max deviation).
  std::function<void(std::size_t, double)> trace;
};

inline constexpr double kDefaultCleanupTol = 1e-13;

/// Greedy AAA fit of `values` sampled at the pairwise-distinct `points`.
/// Stops when the deviation drops to tol * ||values||_inf or mmax support
/// points are in use.
BarycentricApproximant aaa(const ComplexVector& values, const ComplexVector& points, const AaaOptions& options = {});

Complex evaluate(const BarycentricApproximant& r, Complex z);

/// Poles and zeros from the arrowhead pencils of the barycentric
/// denominator and numerator; residues from N(p) / D'(p).
PoleData poles_residues_zeros(const BarycentricApproximant& r);

/// Froissart-doublet removal: drops the support point nearest to every pole
/// whose residue is below residue_tol * ||values||_inf, then recomputes the
/// weights once on the remaining samples.
BarycentricApproximant cleanup(const BarycentricApproximant& r, const ComplexVector& values,
                               const ComplexVector& points, double residue_tol = kDefaultCleanupTol);

}  // namespace harmonic_aaa
