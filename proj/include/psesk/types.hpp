#pragma once

#include <complex>

#include <Eigen/Dense>

namespace psesk {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Largest basis size the precomputed tables are sized for.
inline constexpr int kMaxBasis = 256;

}  // namespace psesk
