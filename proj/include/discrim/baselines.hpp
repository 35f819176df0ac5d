#pragma once

#include <optional>
#include <span>
#include <string>

#include "discrim/povm.hpp"
#include "discrim/quantum.hpp"

namespace discrim {

enum class ReferenceMethod { helstrom_pure, trace_norm_mixed, fourier_symmetric };

std::string to_string(ReferenceMethod method);

struct OptimalReference {
    double p_err_opt = 0.0;
    std::optional<Povm> measurement;
    ReferenceMethod method = ReferenceMethod::helstrom_pure;
};

// 1/2 (1 - sqrt(1 - 4 eta0 eta1 s^2)) for the two-pure-state pair with overlap s.
OptimalReference helstrom_two_pure(double s, double eta0, double eta1);

// 1/2 (1 - ||eta0 rho0 - eta1 rho1||_1). Outcome 0 collects the
// non-negative eigenspace, zero eigenvalues included.
OptimalReference helstrom_two_mixed(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                    double eta0, double eta1);

// Fourier-basis measurement for equal-prior symmetric states.
OptimalReference symmetric_optimal(std::span<const double> coeffs);

// 1 - (sum_k c_k)^2 / d
double symmetric_closed_form(std::span<const double> coeffs);

double trace_norm(const CMatrix& m);

// Columns (1/sqrt(d)) sum_k w^{mk} |k>.
CMatrix fourier_basis(std::size_t d);

}  // namespace discrim
