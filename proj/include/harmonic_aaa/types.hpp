#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace harmonic_aaa {

using Complex = std::complex<double>;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace harmonic_aaa
