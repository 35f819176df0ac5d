#include "discrim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>

namespace discrim {

namespace {

constexpr std::int64_t kSmallBinomial = 64;

// p <= 1/2 and 0 < p from here on.
std::int64_t binomial_small(std::int64_t n, double p, double u) {
    const double q = 1.0 - p;
    const double ratio = p / q;
    double pmf = std::pow(q, static_cast<double>(n));
    double cdf = pmf;
    std::int64_t k = 0;
    while (u >= cdf && k < n) {
        pmf *= static_cast<double>(n - k) / static_cast<double>(k + 1) * ratio;
        ++k;
        cdf += pmf;
    }
    return k;
}

// Inversion starting at the mode: F(mode) is accumulated from the pmf
// recurrence walking down until terms vanish, then the search walks
// whichever way u lies.
std::int64_t binomial_large(std::int64_t n, double p, double u) {
    const double q = 1.0 - p;
    const double up = p / q;
    const auto mode = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor((n + 1) * p)));
    const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
    const double pmf_mode = boost::math::pdf(dist, static_cast<double>(mode));

    double cdf_mode = pmf_mode;
    {
        double pk = pmf_mode;
        for (std::int64_t k = mode; k > 0; --k) {
            pk *= static_cast<double>(k) / (static_cast<double>(n - k + 1) * up);
            cdf_mode += pk;
            if (pk < 1e-18 * cdf_mode) {
                break;
            }
        }
    }

    if (u < cdf_mode) {
        double cdf = cdf_mode;
        double pk = pmf_mode;
        std::int64_t k = mode;
        while (k > 0) {
            const double below = cdf - pk;
            if (u >= below) {
                return k;
            }
            pk *= static_cast<double>(k) / (static_cast<double>(n - k + 1) * up);
            cdf = below;
            --k;
        }
        return 0;
    }
    double cdf = cdf_mode;
    double pk = pmf_mode;
    std::int64_t k = mode;
    while (k < n) {
        pk *= static_cast<double>(n - k) / static_cast<double>(k + 1) * up;
        ++k;
        cdf += pk;
        if (u < cdf || pk == 0.0) {
            return k;
        }
    }
    return n;
}

}  // namespace

std::int64_t sample_binomial(std::int64_t n, double p, RngStream& rng) {
    if (n < 0) {
        throw std::invalid_argument("sample_binomial: n must be non-negative");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("sample_binomial: p must lie in [0, 1]");
    }
    // one uniform per draw keeps stream consumption independent of p
    const double u = rng.uniform();
    if (n == 0 || p == 0.0) {
        return 0;
    }
    if (p == 1.0) {
        return n;
    }
    if (p > 0.5) {
        const double flipped = 1.0 - p;
        return n - (n <= kSmallBinomial ? binomial_small(n, flipped, u) : binomial_large(n, flipped, u));
    }
    return n <= kSmallBinomial ? binomial_small(n, p, u) : binomial_large(n, p, u);
}

SuccessCounts simulate_success_counts(const StateEnsemble& ens, const Povm& povm,
                                      std::int64_t shots, RngStream& rng) {
    if (shots < 1) {
        throw std::invalid_argument("simulate_success_counts: shots per state must be >= 1");
    }
    if (povm.size() != ens.size()) {
        throw std::invalid_argument("simulate_success_counts: POVM has " +
                                    std::to_string(povm.size()) + " effects for " +
                                    std::to_string(ens.size()) + " states");
    }
    if (povm.dim() != ens.dim()) {
        throw std::invalid_argument("simulate_success_counts: dimension mismatch");
    }
    SuccessCounts out;
    out.shots_per_state = shots;
    out.counts.reserve(ens.size());
    for (std::size_t l = 0; l < ens.size(); ++l) {
        const double p = born_probability(ens.state(l), povm.effects[l]);
        out.counts.push_back(sample_binomial(shots, p, rng));
    }
    return out;
}

double estimate_perr(const SuccessCounts& counts, std::span<const double> priors) {
    if (counts.counts.size() != priors.size()) {
        throw std::invalid_argument("estimate_perr: counts and priors differ in length");
    }
    if (counts.shots_per_state < 1) {
        throw std::invalid_argument("estimate_perr: shots per state must be >= 1");
    }
    const auto n = static_cast<double>(counts.shots_per_state);
    double correct = 0.0;
    for (std::size_t l = 0; l < priors.size(); ++l) {
        correct += priors[l] * static_cast<double>(counts.counts[l]) / n;
    }
    return 1.0 - correct;
}

double exact_perr(const StateEnsemble& ens, const Povm& povm) {
    if (povm.size() != ens.size() || povm.dim() != ens.dim()) {
        throw std::invalid_argument("exact_perr: POVM does not match the ensemble");
    }
    double correct = 0.0;
    for (std::size_t l = 0; l < ens.size(); ++l) {
        correct += ens.prior(l) * born_probability(ens.state(l), povm.effects[l]);
    }
    const double err = 1.0 - correct;
    if (err < -1e-10 || err > 1.0 + 1e-10) {
        throw std::domain_error("exact_perr: error probability outside [0, 1]");
    }
    return std::clamp(err, 0.0, 1.0);
}

NoisyObjective::NoisyObjective(StateEnsemble ens, std::int64_t shots, RngStream rng)
    : ens_(std::move(ens)), shots_(shots), rng_(std::move(rng)) {
    if (shots_ < 1) {
        throw std::invalid_argument("NoisyObjective: shots per state must be >= 1");
    }
}

double NoisyObjective::operator()(const ControlVector& z) {
    const Povm povm = povm_for(z);
    const auto counts = simulate_success_counts(ens_, povm, shots_, rng_);
    ++evaluations_;
    return estimate_perr(counts, ens_.priors());
}

}  // namespace discrim
