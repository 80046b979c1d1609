#pragma once

#include <cstddef>

#include "harmonic_aaa/types.hpp"

namespace harmonic_aaa {

// Forward: powers of (z - c). Reciprocal: powers of 1 / (z - c).
enum class BasisKind { Forward, Reciprocal };

const char* to_string(BasisKind kind);

/// Polynomial of degree N in the argument s = z - c (Forward) or
/// s = 1 / (z - c) (Reciprocal), stored as an Arnoldi recurrence:
///
///   s * q_k = sum_{j <= k} H(j, k) q_j + H(k+1, k) q_{k+1},   q_0 = 1,
///
/// with value sum_k coeffs(k) q_k(s). The basis is orthogonal on the
/// fitting arguments with column norms sqrt(M).
struct ArnoldiBasisFit {
  Complex center{0.0, 0.0};
  std::size_t degree = 0;
  BasisKind kind = BasisKind::Forward;
  ComplexMatrix hessenberg;  // (degree + 1) x degree
  ComplexVector coeffs;      // degree + 1
  double residual_norm = 0.0;

  Complex operator()(Complex z) const;
};

/// Recurrence argument for a point: z - c or 1 / (z - c). For the
/// Reciprocal kind a non-finite z maps to 0.
Complex basis_argument(BasisKind kind, Complex center, Complex z);

/// Stabilized least-squares fit of `values` at `points` (Vandermonde with
/// Arnoldi, modified Gram-Schmidt with one reorthogonalization pass).
ArnoldiBasisFit arnoldi_fit(const ComplexVector& points, const ComplexVector& values, std::size_t degree,
                            Complex center, BasisKind kind);

/// Value at p. Reciprocal fits accept p = infinity (any non-finite p).
Complex arnoldi_eval(const ArnoldiBasisFit& fit, Complex p);

/// Basis columns q_0..q_N regenerated at `points` from the stored
/// recurrence. On the fitting points this is the orthogonal basis Q.
ComplexMatrix arnoldi_basis(const ArnoldiBasisFit& fit, const ComplexVector& points);

}  // namespace harmonic_aaa
