#include "discrim/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "discrim/rng.hpp"

namespace discrim {

namespace {

constexpr double kStateTol = 1e-12;
constexpr double kEigenFloor = -1e-10;
constexpr double kProbabilityTol = 1e-10;
constexpr double kCoeffRenormTol = 1e-9;

void check_priors(std::span<const double> priors) {
    double total = 0.0;
    for (double p : priors) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("priors must be non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kStateTol) {
        throw std::invalid_argument("priors must sum to 1 (got " + std::to_string(total) + ")");
    }
}

std::vector<double> normalized_coefficients(std::span<const double> coeffs) {
    if (coeffs.empty()) {
        throw std::invalid_argument("coefficient sequence is empty");
    }
    double norm2 = 0.0;
    for (double c : coeffs) {
        if (!std::isfinite(c) || c < 0.0) {
            throw std::invalid_argument("coefficients must be finite and non-negative");
        }
        norm2 += c * c;
    }
    if (norm2 == 0.0) {
        throw std::invalid_argument("coefficients are all zero");
    }
    if (std::abs(norm2 - 1.0) > kCoeffRenormTol) {
        throw std::invalid_argument("coefficients are not normalized (sum of squares " +
                                    std::to_string(norm2) + ")");
    }
    std::vector<double> out(coeffs.begin(), coeffs.end());
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : out) {
        c *= inv;
    }
    return out;
}

}  // namespace

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw std::invalid_argument("PureState: empty amplitude vector");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kStateTol) {
        throw std::invalid_argument("PureState: amplitudes are not normalized");
    }
}

CMatrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
    }
    if (hermiticity_deviation(matrix_) > kStateTol) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kStateTol) {
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    if (min_hermitian_eigenvalue(matrix_) < kEigenFloor) {
        throw std::invalid_argument("DensityMatrix: matrix is not positive semi-definite");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.projector());
}

StateEnsemble::StateEnsemble(std::vector<DensityMatrix> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
    if (states_.empty()) {
        throw std::invalid_argument("StateEnsemble: no states");
    }
    if (states_.size() != priors_.size()) {
        throw std::invalid_argument("StateEnsemble: states and priors differ in length");
    }
    check_priors(priors_);
    const std::size_t d = states_.front().dim();
    for (const auto& rho : states_) {
        if (rho.dim() != d) {
            throw std::invalid_argument("StateEnsemble: states differ in dimension");
        }
    }
}

DephasingChannel::DephasingChannel(double strength) : strength_(strength) {
    if (!(strength >= 0.5 && strength <= 1.0)) {
        throw std::invalid_argument("DephasingChannel: strength must lie in [1/2, 1]");
    }
}

std::vector<PureState> two_pure_state_vectors(double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::invalid_argument("overlap s must lie in [0, 1]");
    }
    const double a = std::sqrt((1.0 + s) / 2.0);
    const double b = std::sqrt((1.0 - s) / 2.0);
    CVector psi0(2), psi1(2);
    psi0 << a, b;
    psi1 << a, -b;
    // sqrt rounding can leave the norm a few ulps off
    psi0.normalize();
    psi1.normalize();
    return {PureState(psi0), PureState(psi1)};
}

StateEnsemble make_two_pure_states(double s, double eta0, double eta1) {
    const auto psis = two_pure_state_vectors(s);
    return StateEnsemble({DensityMatrix::from_pure(psis[0]), DensityMatrix::from_pure(psis[1])},
                         {eta0, eta1});
}

std::vector<PureState> symmetric_state_vectors(std::span<const double> coeffs) {
    const auto c = normalized_coefficients(coeffs);
    const auto d = c.size();
    std::vector<PureState> out;
    out.reserve(d);
    for (std::size_t j = 0; j < d; ++j) {
        CVector psi(static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < d; ++k) {
            // reduce jk mod d so the phase argument stays small
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) /
                                 static_cast<double>(d);
            psi(static_cast<Eigen::Index>(k)) = c[k] * std::polar(1.0, angle);
        }
        psi.normalize();
        out.emplace_back(psi);
    }
    return out;
}

StateEnsemble make_symmetric_states(std::span<const double> coeffs) {
    const auto psis = symmetric_state_vectors(coeffs);
    std::vector<DensityMatrix> states;
    states.reserve(psis.size());
    for (const auto& psi : psis) {
        states.push_back(DensityMatrix::from_pure(psi));
    }
    const double prior = 1.0 / static_cast<double>(psis.size());
    std::vector<double> priors(psis.size(), prior);
    // absorb rounding so the priors pass the 1e-12 sum check for any d
    double rest = 1.0;
    for (std::size_t i = 0; i + 1 < priors.size(); ++i) {
        rest -= priors[i];
    }
    priors.back() = rest;
    return StateEnsemble(std::move(states), std::move(priors));
}

std::vector<double> make_three_state_coeffs(double theta1, double theta2) {
    const double pi = std::numbers::pi;
    if (!(theta1 >= 0.0 && theta1 <= pi) || !(theta2 >= 0.0 && theta2 <= pi)) {
        throw std::invalid_argument("three-state angles must lie in [0, pi]");
    }
    const double c2 = std::cos(theta2 / 2.0);
    return {std::cos(theta1 / 2.0) * c2, std::sin(theta1 / 2.0) * c2, std::sin(theta2 / 2.0)};
}

std::vector<double> make_biparametric_coeffs(int d, int j0, double alpha) {
    if (d < 2) {
        throw std::invalid_argument("biparametric family needs d >= 2");
    }
    if (j0 < 1 || j0 > d - 1) {
        throw std::invalid_argument("j0 must lie in [1, d-1]");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    std::vector<double> sq(static_cast<std::size_t>(d));
    double total = 0.0;
    for (int k = 0; k < d; ++k) {
        double v = 1.0;
        if (k >= j0) {
            const double ratio = static_cast<double>(k - j0 + 1) / static_cast<double>(d - j0);
            v = 1.0 - std::pow(ratio * alpha, 1.0 / static_cast<double>(d));
        }
        sq[static_cast<std::size_t>(k)] = std::max(v, 0.0);
        total += sq[static_cast<std::size_t>(k)];
    }
    std::vector<double> out(sq.size());
    for (std::size_t k = 0; k < sq.size(); ++k) {
        out[k] = std::sqrt(sq[k] / total);
    }
    return out;
}

std::vector<PureState> random_orthogonal_qubit_pair(RngStream& rng) {
    CVector a(2);
    do {
        a(0) = Complex(rng.normal(), rng.normal());
        a(1) = Complex(rng.normal(), rng.normal());
    } while (a.norm() < 1e-8);
    a.normalize();
    CVector b(2);
    b(0) = -std::conj(a(1));
    b(1) = std::conj(a(0));
    return {PureState(a), PureState(b)};
}

DensityMatrix apply_dephasing(const DensityMatrix& rho, const DephasingChannel& channel) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("apply_dephasing: input is not a qubit state");
    }
    const double p = channel.strength();
    CMatrix z(2, 2);
    z << 1.0, 0.0, 0.0, -1.0;
    const CMatrix out = p * rho.matrix() + (1.0 - p) * (z * rho.matrix() * z);
    return DensityMatrix(out);
}

double born_probability(const DensityMatrix& rho, const CMatrix& effect) {
    if (effect.rows() != effect.cols() || static_cast<std::size_t>(effect.rows()) != rho.dim()) {
        throw std::invalid_argument("born_probability: dimension mismatch");
    }
    // Tr(E rho) = sum_ij E_ij rho_ji
    const double value = (effect.cwiseProduct(rho.matrix().transpose())).sum().real();
    if (value < -kProbabilityTol || value > 1.0 + kProbabilityTol) {
        throw std::domain_error("born_probability: Tr(E rho) = " + std::to_string(value) +
                                " is outside [0, 1]; effect is not part of a valid POVM");
    }
    return std::clamp(value, 0.0, 1.0);
}

double fidelity(const PureState& psi, const DensityMatrix& rho) {
    if (psi.dim() != rho.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const Complex v = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
    return std::clamp(v.real(), 0.0, 1.0);
}

}  // namespace discrim
