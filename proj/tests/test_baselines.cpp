#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "discrim/baselines.hpp"
#include "discrim/measurement.hpp"
#include "discrim/rng.hpp"

using namespace discrim;

namespace {

DensityMatrix random_qubit_state(RngStream& rng) {
    CMatrix a(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix((rho + rho.adjoint()) / 2.0);
}

double error_for_direction(const DensityMatrix& r0, const DensityMatrix& r1, double e0, double e1,
                           double theta, double phi) {
    const double x = std::sin(theta) * std::cos(phi), y = std::sin(theta) * std::sin(phi), z = std::cos(theta);
    CMatrix p(2, 2);
    p << Complex(1 + z, 0), Complex(x, -y), Complex(x, y), Complex(1 - z, 0);
    p /= 2.0;
    const CMatrix q = CMatrix::Identity(2, 2) - p;
    return e0 * (r0.matrix() * q).trace().real() + e1 * (r1.matrix() * p).trace().real();
}

// Minimum error over projective qubit measurements (and the trivial ones) by a
// zooming search over the Bloch sphere.
double bloch_brute_force(const DensityMatrix& r0, const DensityMatrix& r1, double e0, double e1) {
    const double pi = std::numbers::pi;
    double best = std::min(e0, e1);
    double bt = 0.0, bp = 0.0;
    const int n = 120;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < 2 * n; ++j) {
            const double t = pi * i / n, p = pi * j / n;
            const double v = error_for_direction(r0, r1, e0, e1, t, p);
            if (v < best) best = v, bt = t, bp = p;
        }
    }
    double span = pi / n;
    for (int round = 0; round < 30; ++round) {
        const double ct = bt, cp = bp;
        for (int i = -10; i <= 10; ++i) {
            for (int j = -10; j <= 10; ++j) {
                const double t = ct + span * i / 10.0, p = cp + span * j / 10.0;
                const double v = error_for_direction(r0, r1, e0, e1, t, p);
                if (v < best) best = v, bt = t, bp = p;
            }
        }
        span *= 0.5;
    }
    return best;
}

// Minimum over every projective measurement on a grid of real rotations (d=2)
// or over a generic parameterised unitary family (d=3), assigning each basis
// vector to the state it best identifies.
double grid_minimum_symmetric(std::span<const double> c, int steps) {
    const auto ens = make_symmetric_states(c);
    const std::size_t d = c.size();
    RngStream rng(55, 0);
    double best = 1.0;
    for (int trial = 0; trial < steps; ++trial) {
        CMatrix a(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
        const CMatrix u = qr_isometry(a);
        std::vector<std::size_t> perm(d);
        for (std::size_t i = 0; i < d; ++i) perm[i] = i;
        do {
            Povm povm;
            for (std::size_t m = 0; m < d; ++m) povm.effects.push_back(u.col(perm[m]) * u.col(perm[m]).adjoint());
            best = std::min(best, exact_perr(ens, povm));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return best;
}

}  // namespace

TEST_CASE("helstrom_two_pure") {
    CHECK(helstrom_two_pure(0.0, 0.5, 0.5).p_err_opt == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(helstrom_two_pure(1.0, 0.5, 0.5).p_err_opt == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(helstrom_two_pure(0.6, 0.5, 0.5).p_err_opt - 0.1) < 1e-15);
    CHECK(helstrom_two_pure(1.0, 0.3, 0.7).p_err_opt == doctest::Approx(0.3));
    CHECK(to_string(helstrom_two_pure(0.2, 0.5, 0.5).method) == "helstrom-pure");
    CHECK_THROWS_AS(helstrom_two_pure(1.2, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("the Helstrom value is monotone in the overlap") {
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double v = helstrom_two_pure(i / 100.0, 0.4, 0.6).p_err_opt;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("mixed Helstrom agrees with the pure formula on pure inputs") {
    for (int i = 0; i <= 50; ++i) {
        const double s = i / 50.0;
        for (const auto& eta : {std::pair{0.5, 0.5}, std::pair{1.0 / 3.0, 2.0 / 3.0}, std::pair{0.4, 0.6}}) {
            const auto psi = two_pure_state_vectors(s);
            const auto mixed = helstrom_two_mixed(DensityMatrix::from_pure(psi[0]), DensityMatrix::from_pure(psi[1]),
                                                  eta.first, eta.second);
            CHECK(std::abs(mixed.p_err_opt - helstrom_two_pure(s, eta.first, eta.second).p_err_opt) < 1e-12);
        }
    }
}

TEST_CASE("helstrom_two_mixed") {
    SUBCASE("identical states give the smaller prior") {
        const auto psi = two_pure_state_vectors(0.3);
        const auto rho = DensityMatrix::from_pure(psi[0]);
        CHECK(helstrom_two_mixed(rho, rho, 0.3, 0.7).p_err_opt == doctest::Approx(0.3).epsilon(1e-12));
    }
    SUBCASE("full dephasing") {
        const auto psi = two_pure_state_vectors(0.6);
        const DephasingChannel full(0.5);
        const auto a = apply_dephasing(DensityMatrix::from_pure(psi[0]), full);
        const auto b = apply_dephasing(DensityMatrix::from_pure(psi[1]), full);
        const auto ref = helstrom_two_mixed(a, b, 0.5, 0.5);
        CHECK(ref.p_err_opt <= 0.5 + 1e-12);
        CHECK(ref.p_err_opt >= helstrom_two_pure(0.6, 0.5, 0.5).p_err_opt - 1e-12);
    }
    SUBCASE("dephased pair at p = 0.6") {
        const auto psi = two_pure_state_vectors(0.6);
        const DephasingChannel ch(0.6);
        const auto a = apply_dephasing(DensityMatrix::from_pure(psi[0]), ch);
        const auto b = apply_dephasing(DensityMatrix::from_pure(psi[1]), ch);
        const auto ref = helstrom_two_mixed(a, b, 0.5, 0.5);
        CHECK(std::abs(ref.p_err_opt - 0.42) < 1e-12);
        CHECK(std::abs(ref.p_err_opt - bloch_brute_force(a, b, 0.5, 0.5)) < 1e-6);
        CHECK(to_string(ref.method) == "trace-norm-mixed");
    }
    SUBCASE("dephasing never helps") {
        const auto psi = two_pure_state_vectors(0.4);
        const double pure = helstrom_two_pure(0.4, 0.5, 0.5).p_err_opt;
        double prev = pure - 1e-12;
        for (double p = 1.0; p >= 0.5; p -= 0.05) {
            const DephasingChannel ch(p);
            const double v = helstrom_two_mixed(apply_dephasing(DensityMatrix::from_pure(psi[0]), ch),
                                                apply_dephasing(DensityMatrix::from_pure(psi[1]), ch), 0.5, 0.5)
                                 .p_err_opt;
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("mixed Helstrom matches a Bloch-sphere brute force on random pairs") {
    RngStream rng(31, 0);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_qubit_state(rng);
        const auto b = random_qubit_state(rng);
        const double e0 = 0.2 + 0.6 * rng.uniform();
        const auto ref = helstrom_two_mixed(a, b, e0, 1.0 - e0);
        CHECK(std::abs(ref.p_err_opt - bloch_brute_force(a, b, e0, 1.0 - e0)) < 1e-6);
        REQUIRE(ref.measurement.has_value());
        CHECK(validate_povm(*ref.measurement).ok);
        CHECK(std::abs(exact_perr(StateEnsemble({a, b}, {e0, 1.0 - e0}), *ref.measurement) - ref.p_err_opt) < 1e-12);
    }
}

TEST_CASE("trace_norm") {
    CHECK(trace_norm(CMatrix::Identity(3, 3)) == doctest::Approx(3.0));
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    CHECK(trace_norm(z) == doctest::Approx(2.0));
    const auto psi = two_pure_state_vectors(0.6);
    const CMatrix gamma = 0.5 * DensityMatrix::from_pure(psi[0]).matrix() - 0.5 * DensityMatrix::from_pure(psi[1]).matrix();
    CHECK(trace_norm(gamma) == doctest::Approx(0.8).epsilon(1e-14));
    CMatrix bad = CMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(trace_norm(bad), std::invalid_argument);
}

TEST_CASE("fourier_basis is unitary") {
    for (std::size_t d = 2; d <= 6; ++d) {
        const CMatrix f = fourier_basis(d);
        CHECK(max_abs_deviation(f.adjoint() * f, CMatrix::Identity(d, d)) < 1e-14);
    }
}

TEST_CASE("symmetric closed form equals the constructed Fourier measurement") {
    RngStream rng(12, 0);
    for (std::size_t d = 2; d <= 5; ++d) {
        for (int i = 0; i < 100; ++i) {
            std::vector<double> c(d);
            double norm = 0.0;
            for (auto& x : c) {
                x = std::abs(rng.normal());
                norm += x * x;
            }
            for (auto& x : c) x /= std::sqrt(norm);
            const auto ref = symmetric_optimal(c);
            CHECK(std::abs(ref.p_err_opt - symmetric_closed_form(c)) < 1e-10);
            REQUIRE(ref.measurement.has_value());
            CHECK(validate_povm(*ref.measurement).ok);
        }
    }
}

TEST_CASE("symmetric_optimal examples") {
    const double basis[] = {1.0, 0.0, 0.0};
    CHECK(symmetric_optimal(basis).p_err_opt == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const double flat[] = {1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)};
    CHECK(std::abs(symmetric_optimal(flat).p_err_opt) < 1e-12);
    CHECK(to_string(symmetric_optimal(flat).method) == "fourier-symmetric");

    // d = 2 is a two-state problem with overlap c0^2 - c1^2.
    const double c0 = std::cos(0.4), c1 = std::sin(0.4);
    const double pair[] = {c0, c1};
    CHECK(std::abs(symmetric_optimal(pair).p_err_opt - helstrom_two_pure(c0 * c0 - c1 * c1, 0.5, 0.5).p_err_opt) <
          1e-12);
}

TEST_CASE("no projective measurement beats the symmetric optimum") {
    const auto c2 = make_three_state_coeffs(0.7, 0.0);
    const std::vector<double> pair{c2[0], c2[1]};
    CHECK(grid_minimum_symmetric(pair, 400) >= symmetric_closed_form(pair) - 1e-12);
    const auto c3 = make_three_state_coeffs(0.9, 0.5);
    const double grid = grid_minimum_symmetric(c3, 400);
    CHECK(grid >= symmetric_closed_form(c3) - 1e-12);
    CHECK(grid <= symmetric_closed_form(c3) + 0.1);
}

TEST_CASE("Helstrom measurement is a valid POVM achieving the bound") {
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
        const auto ref = helstrom_two_pure(s, 0.5, 0.5);
        REQUIRE(ref.measurement.has_value());
        CHECK(validate_povm(*ref.measurement).ok);
        CHECK(std::abs(exact_perr(make_two_pure_states(s, 0.5, 0.5), *ref.measurement) - ref.p_err_opt) < 1e-12);
    }
}
