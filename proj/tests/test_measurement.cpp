#include <cmath>
#include <vector>

#include "doctest.h"

#include "discrim/baselines.hpp"
#include "discrim/measurement.hpp"

using namespace discrim;

namespace {

// Independent pmf via log-gamma, used as the oracle for the sampler.
double binomial_pmf(int n, int k, double p) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(lc + k * std::log(p) + (n - k) * std::log1p(-p));
}

// Chi-square statistic over cells with expected count >= 5 (the rest pooled).
double chi_square(int n, double p, int draws, RngStream& rng, int& dof) {
    std::vector<int> counts(n + 1, 0);
    for (int i = 0; i < draws; ++i) counts[sample_binomial(n, p, rng)]++;
    double chi = 0.0, pooled_obs = 0.0, pooled_exp = 0.0;
    dof = -1;
    for (int k = 0; k <= n; ++k) {
        const double e = draws * binomial_pmf(n, k, p);
        if (e >= 5.0) {
            chi += (counts[k] - e) * (counts[k] - e) / e;
            ++dof;
        } else {
            pooled_obs += counts[k];
            pooled_exp += e;
        }
    }
    if (pooled_exp >= 5.0) {
        chi += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
        ++dof;
    }
    return chi;
}

Povm helstrom_povm(double s) { return *helstrom_two_pure(s, 0.5, 0.5).measurement; }

}  // namespace

TEST_CASE("sample_binomial degenerate cases") {
    RngStream rng(1, 0);
    CHECK(sample_binomial(50, 0.0, rng) == 0);
    CHECK(sample_binomial(50, 1.0, rng) == 50);
    CHECK(sample_binomial(5000, 1.0, rng) == 5000);
    CHECK(sample_binomial(0, 0.3, rng) == 0);
    CHECK_THROWS_AS(sample_binomial(10, 1.5, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_binomial(-1, 0.5, rng), std::invalid_argument);
}

TEST_CASE("sample_binomial matches the exact distribution") {
    RngStream rng(42, 0);
    struct Case { int n; double p; };
    // small-n inversion, large-n mode search, and the p > 1/2 reflection
    for (const Case c : {Case{20, 0.3}, Case{50, 0.85}, Case{64, 0.5}, Case{300, 0.42}, Case{1500, 0.93},
                         Case{1000, 0.01}}) {
        int dof = 0;
        const double chi = chi_square(c.n, c.p, 200000, rng, dof);
        // mean + 5 standard deviations of a chi-square with `dof` degrees of freedom
        CAPTURE(c.n);
        CAPTURE(c.p);
        CHECK(chi < dof + 5.0 * std::sqrt(2.0 * dof));
    }
}

TEST_CASE("sample_binomial is reproducible") {
    RngStream a(9, 4), b(9, 4);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_binomial(1000, 0.37, a) == sample_binomial(1000, 0.37, b));
    }
}

TEST_CASE("simulate_success_counts") {
    RngStream rng(3, 0);
    SUBCASE("orthogonal states and matched projectors always succeed") {
        const auto ens = make_two_pure_states(0.0, 0.5, 0.5);
        const auto counts = simulate_success_counts(ens, helstrom_povm(0.0), 77, rng);
        CHECK(counts.counts == std::vector<std::int64_t>{77, 77});
        CHECK(counts.shots_per_state == 77);
    }
    SUBCASE("zero success probability") {
        const auto ens = make_two_pure_states(0.0, 0.5, 0.5);
        auto povm = helstrom_povm(0.0);
        std::swap(povm.effects[0], povm.effects[1]);
        const auto counts = simulate_success_counts(ens, povm, 40, rng);
        CHECK(counts.counts == std::vector<std::int64_t>{0, 0});
    }
    SUBCASE("frequencies fall within 3 sigma for N = 1e5") {
        const auto ens = make_two_pure_states(0.6, 0.5, 0.5);
        const auto povm = helstrom_povm(0.6);
        const auto counts = simulate_success_counts(ens, povm, 100000, rng);
        for (std::size_t l = 0; l < 2; ++l) {
            const double p = born_probability(ens.state(l), povm.effects[l]);
            const double sigma = std::sqrt(p * (1 - p) / 1e5);
            CHECK(std::abs(counts.counts[l] / 1e5 - p) < 3 * sigma);
        }
    }
    SUBCASE("mismatches") {
        const auto ens = make_two_pure_states(0.6, 0.5, 0.5);
        Povm three{{CMatrix::Identity(2, 2) / 3.0, CMatrix::Identity(2, 2) / 3.0, CMatrix::Identity(2, 2) / 3.0}};
        CHECK_THROWS_AS(simulate_success_counts(ens, three, 10, rng), std::invalid_argument);
        CHECK_THROWS_AS(simulate_success_counts(ens, helstrom_povm(0.6), 0, rng), std::invalid_argument);
    }
}

TEST_CASE("estimate_perr") {
    const std::vector<double> eta{0.5, 0.5};
    CHECK(estimate_perr({{100, 100}, 100}, eta) == 0.0);
    CHECK(estimate_perr({{0, 0}, 100}, eta) == 1.0);
    CHECK(estimate_perr({{90, 70}, 100}, eta) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK_THROWS_AS(estimate_perr({{1, 2, 3}, 10}, eta), std::invalid_argument);
}

TEST_CASE("exact_perr") {
    const auto orth = make_two_pure_states(0.0, 0.5, 0.5);
    CHECK(exact_perr(orth, helstrom_povm(0.0)) == doctest::Approx(0.0).epsilon(1e-15));

    const double c[] = {0.6, 0.8, 0.0};
    const auto sym = make_symmetric_states(c);
    Povm uniform{{CMatrix::Identity(3, 3) / 3.0, CMatrix::Identity(3, 3) / 3.0, CMatrix::Identity(3, 3) / 3.0}};
    CHECK(exact_perr(sym, uniform) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    const auto ens = make_two_pure_states(0.6, 0.5, 0.5);
    CHECK(std::abs(exact_perr(ens, helstrom_povm(0.6)) - 0.1) < 1e-12);
    CHECK_THROWS_AS(exact_perr(ens, uniform), std::invalid_argument);
}

TEST_CASE("estimator is unbiased at N = 100") {
    const auto ens = make_two_pure_states(0.5, 0.3, 0.7);
    RngStream rng(77, 0);
    const auto povm = povm_from_control(ControlVector::random(Layout::general, 2, 2, rng));
    const double exact = exact_perr(ens, povm);
    const int draws = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double v = estimate_perr(simulate_success_counts(ens, povm, 100, rng), ens.priors());
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
    CHECK(std::abs(mean - exact) < 4.0 * se);
}

TEST_CASE("NoisyObjective") {
    const auto ens = make_two_pure_states(0.5, 0.5, 0.5);
    RngStream init(5, 0);
    const auto z = ControlVector::random(Layout::general, 2, 2, init);
    const double exact = exact_perr(ens, povm_for(z));

    SUBCASE("large N approaches the exact error") {
        NoisyObjective f(ens, 1000000, RngStream(1, 0));
        CHECK(std::abs(f(z) - exact) < 2e-3);
        CHECK(f.copies_per_state() == 1000000);
    }
    SUBCASE("replayed stream gives the same value") {
        NoisyObjective f(ens, 50, RngStream(8, 2)), g(ens, 50, RngStream(8, 2));
        for (int i = 0; i < 20; ++i) CHECK(f(z) == g(z));
        CHECK(f.evaluations() == 20);
    }
    SUBCASE("spread across independent streams matches the binomial prediction") {
        const int N = 200;
        const int samples = 4000;
        std::vector<double> values;
        for (int i = 0; i < samples; ++i) {
            NoisyObjective f(ens, N, RngStream(1234, static_cast<std::uint64_t>(i)));
            values.push_back(f(z));
        }
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= samples;
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        var /= samples - 1;
        const auto povm = povm_for(z);
        double predicted = 0.0;
        for (std::size_t l = 0; l < 2; ++l) {
            const double p = born_probability(ens.state(l), povm.effects[l]);
            predicted += 0.25 * p * (1 - p) / N;
        }
        // sample variance of 4000 draws is within ~10% of the truth
        CHECK(std::sqrt(var) == doctest::Approx(std::sqrt(predicted)).epsilon(0.1));
    }
}
