#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "discrim/linalg.hpp"
#include "discrim/povm.hpp"
#include "discrim/rng.hpp"

namespace discrim {

/// a_k = a / (k + 1 + A)^s,  c_k = b / (k + 1)^r.
///
/// The defaults are tuned on the unit-Hessian quadratic |z - w|^2 in eight
/// complex dimensions. Error-probability objectives live on a different
/// scale and carry their own gains in the scenario files.
struct GainSchedule {
    double a = 0.65;
    double A = 15.0;
    double s = 0.602;
    double b = 10.0;
    double r = 0.101;

    void validate() const;
};

struct Gains {
    double a_k;
    double c_k;
};

Gains gains(std::int64_t k, const GainSchedule& g);

// Entries drawn uniformly from {1, -1, i, -i}.
CVector sample_perturbation(std::size_t dim, RngStream& rng);

// g_i = (f_plus - f_minus) / (2 c_k conj(delta_i)).
CVector pseudo_gradient(double f_plus, double f_minus, double c_k, const CVector& delta);

using Objective = std::function<double(const ControlVector&)>;

struct OptimizerState {
    ControlVector z;
    std::int64_t k = 0;
    RngStream rng;
};

struct StepRecord {
    std::int64_t k;
    double f_plus;
    double f_minus;
};

// One CSPSA iteration; advances state.z and state.k in place.
StepRecord step(OptimizerState& state, const Objective& objective, const GainSchedule& g);

struct TraceRecord {
    std::int64_t k;
    double f_plus;
    double f_minus;
    // exact error of the iterate after this step; NaN without an evaluator
    double exact;
};

struct RunTrace {
    std::vector<TraceRecord> records;
    ControlVector final_z;
    bool completed = false;
    std::string error;
};

RunTrace run(const ControlVector& z0, const Objective& objective, const GainSchedule& g,
             std::int64_t iterations, RngStream rng,
             const std::optional<Objective>& evaluator = std::nullopt);

}  // namespace discrim
