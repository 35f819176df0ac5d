#pragma once

#include <complex>

#include <Eigen/Dense>

namespace discrim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Largest |M_ij - conj(M_ji)|.
double hermiticity_deviation(const CMatrix& m);

// Eigenvalues of (M + M†)/2, ascending.
RVector hermitian_eigenvalues(const CMatrix& m);

double min_hermitian_eigenvalue(const CMatrix& m);

// Largest element-wise |M_ij - N_ij|.
double max_abs_deviation(const CMatrix& m, const CMatrix& n);

}  // namespace discrim
