#pragma once

#include <complex>
#include <random>
#include <vector>

#include "harmonic_aaa/geometry.hpp"
#include "harmonic_aaa/laplace.hpp"
#include "harmonic_aaa/types.hpp"

namespace test_support {

using harmonic_aaa::Complex;
using harmonic_aaa::ComplexMatrix;
using harmonic_aaa::ComplexVector;

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = Complex(d(gen), d(gen));
  }
  return m;
}

inline ComplexVector unit_circle(Eigen::Index n) {
  ComplexVector z(n);
  for (Eigen::Index k = 0; k < n; ++k) z(k) = std::polar(1.0, 2.0 * 3.14159265358979323846 * k / n);
  return z;
}

inline ComplexVector to_vector(const std::vector<Complex>& v) {
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v[k];
  return out;
}

inline double min_distance(Complex p, const ComplexVector& set) {
  double d = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < set.size(); ++k) d = std::min(d, std::abs(set(k) - p));
  return d;
}

inline void set_values(harmonic_aaa::Boundary& b, double (*u)(Complex)) {
  b.samples.values.clear();
  for (Complex z : b.samples.points) b.samples.values.push_back(u(z));
}

inline double x_squared(Complex z) { return z.real() * z.real(); }

// The uniformly sampled L-shape solve is shared by several test files.
inline const harmonic_aaa::LaplaceSolution& l_shape_solution() {
  static const harmonic_aaa::LaplaceSolution sol = [] {
    auto b = harmonic_aaa::l_shape_boundary(0.01, harmonic_aaa::Duplicates::Keep);
    set_values(b, x_squared);
    return harmonic_aaa::solve_interior(b.samples, b.polygon, {0.5, 0.5});
  }();
  return sol;
}

}  // namespace test_support
