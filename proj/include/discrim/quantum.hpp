#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "discrim/linalg.hpp"

namespace discrim {

class RngStream;

/// Normalized state vector. Construction rejects amplitudes whose squared
/// norm differs from 1 by more than 1e-12.
class PureState {
public:
    explicit PureState(CVector amplitudes);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const CVector& amplitudes() const { return amplitudes_; }

    // |psi><psi|
    CMatrix projector() const;

private:
    CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semi-definite matrix. Checked on
/// construction (1e-12 Hermiticity and trace, -1e-10 eigenvalue floor).
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix matrix);
    static DensityMatrix from_pure(const PureState& psi);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const CMatrix& matrix() const { return matrix_; }

private:
    CMatrix matrix_;
};

/// States {rho_q} with priors {eta_q}.
class StateEnsemble {
public:
    StateEnsemble(std::vector<DensityMatrix> states, std::vector<double> priors);

    std::size_t size() const { return states_.size(); }
    std::size_t dim() const { return states_.front().dim(); }
    const std::vector<DensityMatrix>& states() const { return states_; }
    const std::vector<double>& priors() const { return priors_; }
    const DensityMatrix& state(std::size_t i) const { return states_.at(i); }
    double prior(std::size_t i) const { return priors_.at(i); }

private:
    std::vector<DensityMatrix> states_;
    std::vector<double> priors_;
};

/// Qubit dephasing rho -> p rho + (1-p) Z rho Z with p in [1/2, 1].
class DephasingChannel {
public:
    explicit DephasingChannel(double strength);
    double strength() const { return strength_; }

private:
    double strength_;
};

// The pair sqrt((1+s)/2)|0> +- sqrt((1-s)/2)|1>, whose inner product is s.
std::vector<PureState> two_pure_state_vectors(double s);
StateEnsemble make_two_pure_states(double s, double eta0, double eta1);

// |psi_j> = sum_k c_k w^{jk} |k>, w = exp(2 pi i / d), uniform priors.
std::vector<PureState> symmetric_state_vectors(std::span<const double> coeffs);
StateEnsemble make_symmetric_states(std::span<const double> coeffs);

std::vector<double> make_three_state_coeffs(double theta1, double theta2);
std::vector<double> make_biparametric_coeffs(int d, int j0, double alpha);

// Haar-random qubit state and its orthogonal complement.
std::vector<PureState> random_orthogonal_qubit_pair(RngStream& rng);

DensityMatrix apply_dephasing(const DensityMatrix& rho, const DephasingChannel& channel);

// Tr(E rho), real part, clamped to [0,1] when within 1e-10 of the boundary.
double born_probability(const DensityMatrix& rho, const CMatrix& effect);

double fidelity(const PureState& psi, const DensityMatrix& rho);

}  // namespace discrim
