#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "discrim/povm.hpp"
#include "discrim/quantum.hpp"
#include "discrim/rng.hpp"

namespace discrim {

struct SuccessCounts {
    std::vector<std::int64_t> counts;
    std::int64_t shots_per_state = 0;
};

// Exact Binomial(n, p) draw. Inverse transform from zero for n <= 64,
// inversion outward from the mode above that.
std::int64_t sample_binomial(std::int64_t n, double p, RngStream& rng);

SuccessCounts simulate_success_counts(const StateEnsemble& ens, const Povm& povm,
                                      std::int64_t shots, RngStream& rng);

double estimate_perr(const SuccessCounts& counts, std::span<const double> priors);

// 1 - sum_l eta_l Tr(E_l rho_l). Evaluation only: never called by the optimizer.
double exact_perr(const StateEnsemble& ens, const Povm& povm);

/// Error probability estimated from simulated shots.
///
/// Each call draws fresh binomial counts from the owned stream and
/// consumes `shots` copies of every state.
class NoisyObjective {
public:
    NoisyObjective(StateEnsemble ens, std::int64_t shots, RngStream rng);

    double operator()(const ControlVector& z);

    std::int64_t shots() const { return shots_; }
    std::int64_t evaluations() const { return evaluations_; }
    // Copies of each state consumed so far.
    std::int64_t copies_per_state() const { return evaluations_ * shots_; }

private:
    StateEnsemble ens_;
    std::int64_t shots_;
    RngStream rng_;
    std::int64_t evaluations_ = 0;
};

}  // namespace discrim
