#include "discrim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "discrim/measurement.hpp"

namespace discrim {

namespace {

void check_two_priors(double eta0, double eta1) {
    if (!(eta0 >= 0.0 && eta1 >= 0.0) || std::abs(eta0 + eta1 - 1.0) > 1e-12) {
        throw std::invalid_argument("priors must be non-negative and sum to 1");
    }
}

// Projector onto the eigenspace of the Helstrom operator with eigenvalue
// >= 0 (outcome 0) and its complement (outcome 1).
Povm helstrom_measurement(const CMatrix& gamma) {
    const CMatrix sym = 0.5 * (gamma + gamma.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    const auto d = sym.rows();
    // eigenvalues this close to zero are treated as zero and go to outcome 0
    const double zero_tol = 1e-12;
    CMatrix e0 = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (solver.eigenvalues()(i) >= -zero_tol) {
            const auto v = solver.eigenvectors().col(i);
            e0 += v * v.adjoint();
        }
    }
    Povm povm;
    povm.effects.push_back(e0);
    povm.effects.push_back(CMatrix::Identity(d, d) - e0);
    return povm;
}

}  // namespace

std::string to_string(ReferenceMethod method) {
    switch (method) {
        case ReferenceMethod::helstrom_pure: return "helstrom-pure";
        case ReferenceMethod::trace_norm_mixed: return "trace-norm-mixed";
        case ReferenceMethod::fourier_symmetric: return "fourier-symmetric";
    }
    return "unknown";
}

OptimalReference helstrom_two_pure(double s, double eta0, double eta1) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::invalid_argument("helstrom_two_pure: s must lie in [0, 1]");
    }
    check_two_priors(eta0, eta1);
    const double radicand = std::max(0.0, 1.0 - 4.0 * eta0 * eta1 * s * s);
    OptimalReference ref;
    ref.p_err_opt = 0.5 * (1.0 - std::sqrt(radicand));
    ref.method = ReferenceMethod::helstrom_pure;
    const auto ens = make_two_pure_states(s, eta0, eta1);
    ref.measurement = helstrom_measurement(eta0 * ens.state(0).matrix() - eta1 * ens.state(1).matrix());
    return ref;
}

OptimalReference helstrom_two_mixed(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                    double eta0, double eta1) {
    if (rho0.dim() != rho1.dim()) {
        throw std::invalid_argument("helstrom_two_mixed: dimension mismatch");
    }
    check_two_priors(eta0, eta1);
    const CMatrix gamma = eta0 * rho0.matrix() - eta1 * rho1.matrix();
    OptimalReference ref;
    const double p = 0.5 * (1.0 - trace_norm(gamma));
    ref.p_err_opt = std::clamp(p, 0.0, 1.0 - std::max(eta0, eta1));
    ref.method = ReferenceMethod::trace_norm_mixed;
    ref.measurement = helstrom_measurement(gamma);
    return ref;
}

CMatrix fourier_basis(std::size_t d) {
    if (d == 0) {
        throw std::invalid_argument("fourier_basis: dimension must be >= 1");
    }
    const auto n = static_cast<Eigen::Index>(d);
    CMatrix f(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index m = 0; m < n; ++m) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((m * k) % n) /
                                 static_cast<double>(d);
            f(k, m) = norm * std::polar(1.0, angle);
        }
    }
    return f;
}

double symmetric_closed_form(std::span<const double> coeffs) {
    double sum = 0.0;
    for (double c : coeffs) {
        if (!(c >= 0.0)) {
            throw std::invalid_argument("symmetric_closed_form: coefficients must be non-negative reals");
        }
        sum += c;
    }
    return std::clamp(1.0 - sum * sum / static_cast<double>(coeffs.size()), 0.0, 1.0);
}

OptimalReference symmetric_optimal(std::span<const double> coeffs) {
    const auto ens = make_symmetric_states(coeffs);
    const CMatrix f = fourier_basis(ens.dim());
    Povm povm;
    for (Eigen::Index m = 0; m < f.cols(); ++m) {
        povm.effects.emplace_back(f.col(m) * f.col(m).adjoint());
    }
    OptimalReference ref;
    ref.p_err_opt = exact_perr(ens, povm);
    ref.method = ReferenceMethod::fourier_symmetric;
    ref.measurement = std::move(povm);
    return ref;
}

double trace_norm(const CMatrix& m) {
    if (hermiticity_deviation(m) > 1e-10) {
        throw std::invalid_argument("trace_norm: matrix is not Hermitian");
    }
    return hermitian_eigenvalues(m).cwiseAbs().sum();
}

}  // namespace discrim
