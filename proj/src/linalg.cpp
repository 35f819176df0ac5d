#include "discrim/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace discrim {

double hermiticity_deviation(const CMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermiticity_deviation: matrix is not square");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

RVector hermitian_eigenvalues(const CMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
    }
    const CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double min_hermitian_eigenvalue(const CMatrix& m) {
    return hermitian_eigenvalues(m).minCoeff();
}

double max_abs_deviation(const CMatrix& m, const CMatrix& n) {
    if (m.rows() != n.rows() || m.cols() != n.cols()) {
        throw std::invalid_argument("max_abs_deviation: shape mismatch");
    }
    return (m - n).cwiseAbs().maxCoeff();
}

}  // namespace discrim
