#include "discrim/cspsa.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace discrim {

void GainSchedule::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("gain a must be > 0");
    if (!(A >= 0.0)) throw std::invalid_argument("gain A must be >= 0");
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("gain exponent s must lie in (0, 1]");
    if (!(b > 0.0)) throw std::invalid_argument("gain b must be > 0");
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("gain exponent r must lie in (0, 1]");
}

Gains gains(std::int64_t k, const GainSchedule& g) {
    if (k < 0) {
        throw std::invalid_argument("gains: iteration index must be >= 0");
    }
    const auto kk = static_cast<double>(k);
    return {g.a / std::pow(kk + 1.0 + g.A, g.s), g.b / std::pow(kk + 1.0, g.r)};
}

CVector sample_perturbation(std::size_t dim, RngStream& rng) {
    if (dim == 0) {
        throw std::invalid_argument("sample_perturbation: dimension must be >= 1");
    }
    static const Complex symbols[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    CVector delta(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < delta.size(); ++i) {
        delta(i) = symbols[rng.uniform_bits(2)];
    }
    return delta;
}

CVector pseudo_gradient(double f_plus, double f_minus, double c_k, const CVector& delta) {
    if (!(c_k > 0.0)) {
        throw std::invalid_argument("pseudo_gradient: c_k must be > 0");
    }
    const double diff = (f_plus - f_minus) / (2.0 * c_k);
    // |delta_i| = 1, so 1 / conj(delta_i) = delta_i
    return diff * delta;
}

StepRecord step(OptimizerState& state, const Objective& objective, const GainSchedule& g) {
    const auto [a_k, c_k] = gains(state.k, g);
    const CVector delta = sample_perturbation(state.z.size(), state.rng);
    const CVector& z = state.z.entries();
    const ControlVector z_plus = state.z.with_entries(z + c_k * delta);
    const ControlVector z_minus = state.z.with_entries(z - c_k * delta);
    const double f_plus = objective(z_plus);
    const double f_minus = objective(z_minus);
    const CVector grad = pseudo_gradient(f_plus, f_minus, c_k, delta);
    StepRecord record{state.k, f_plus, f_minus};
    state.z = state.z.with_entries(z - a_k * grad);
    ++state.k;
    return record;
}

RunTrace run(const ControlVector& z0, const Objective& objective, const GainSchedule& g,
             std::int64_t iterations, RngStream rng, const std::optional<Objective>& evaluator) {
    if (iterations < 1) {
        throw std::invalid_argument("run: iteration budget must be >= 1");
    }
    g.validate();
    RunTrace trace{{}, z0, false, {}};
    trace.records.reserve(static_cast<std::size_t>(iterations));
    OptimizerState state{z0, 0, std::move(rng)};
    try {
        for (std::int64_t it = 0; it < iterations; ++it) {
            const StepRecord rec = step(state, objective, g);
            const double exact = evaluator ? (*evaluator)(state.z)
                                           : std::numeric_limits<double>::quiet_NaN();
            trace.records.push_back({rec.k, rec.f_plus, rec.f_minus, exact});
            trace.final_z = state.z;
        }
    } catch (const DegenerateControlError& e) {
        trace.error = e.what();
        return trace;
    }
    trace.completed = true;
    return trace;
}

}  // namespace discrim
