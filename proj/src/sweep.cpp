#include "discrim/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "discrim/measurement.hpp"
#include "discrim/stats.hpp"

namespace discrim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Basis whose first column spans the positive part of eta0 P0 - eta1 P1.
CMatrix helstrom_basis(const std::vector<PureState>& pure, const std::vector<double>& priors) {
    const CMatrix gamma = priors[0] * pure[0].projector() - priors[1] * pure[1].projector();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (gamma + gamma.adjoint()));
    const CMatrix& v = solver.eigenvectors();
    CMatrix basis(2, 2);
    basis.col(0) = v.col(1);
    basis.col(1) = v.col(0);
    return basis;
}

RepetitionResult guarded_repetition(const Scenario& sc, const GridPoint& point, std::int64_t rep,
                                    bool keep_trace) {
    try {
        return run_repetition(sc, point, rep, keep_trace);
    } catch (const std::exception& e) {
        RepetitionResult failed;
        failed.error = e.what();
        return failed;
    }
}

}  // namespace

std::uint64_t grid_point_seed(std::uint64_t base_seed, double param) {
    const auto key = static_cast<std::int64_t>(std::llround(param * 1e9));
    return combine_seed(base_seed, static_cast<std::uint64_t>(key));
}

GridPoint build_grid_point(const Scenario& sc, double param) {
    const std::uint64_t seed = grid_point_seed(sc.seed, param);
    switch (sc.family) {
        case Family::two_pure: {
            auto ens = make_two_pure_states(param, sc.priors[0], sc.priors[1]);
            auto ref = helstrom_two_pure(param, sc.priors[0], sc.priors[1]);
            return GridPoint{param, std::move(ens), std::move(ref), std::nullopt, seed};
        }
        case Family::symmetric_theta: {
            const auto coeffs = make_three_state_coeffs(param, sc.theta2);
            return GridPoint{param, make_symmetric_states(coeffs), symmetric_optimal(coeffs),
                             std::nullopt, seed};
        }
        case Family::symmetric_biparam: {
            const auto coeffs = make_biparametric_coeffs(sc.d, sc.j0, param);
            return GridPoint{param, make_symmetric_states(coeffs), symmetric_optimal(coeffs),
                             std::nullopt, seed};
        }
        case Family::dephasing: {
            RngStream source_rng(sc.source_seed, 0);
            const auto pure = sc.source == DephasingSource::random_orthogonal
                                  ? random_orthogonal_qubit_pair(source_rng)
                                  : two_pure_state_vectors(sc.source_s);
            const DephasingChannel channel(param);
            const auto rho0 = apply_dephasing(DensityMatrix::from_pure(pure[0]), channel);
            const auto rho1 = apply_dephasing(DensityMatrix::from_pure(pure[1]), channel);
            auto ref = helstrom_two_mixed(rho0, rho1, sc.priors[0], sc.priors[1]);
            std::optional<ControlVector> warm;
            if (sc.init == Initialization::warm_start) {
                warm = control_from_basis(helstrom_basis(pure, sc.priors), sc.layout);
            }
            StateEnsemble ens({rho0, rho1}, sc.priors);
            return GridPoint{param, std::move(ens), std::move(ref), std::move(warm), seed};
        }
    }
    throw std::logic_error("build_grid_point: unhandled family");
}

RepetitionResult run_repetition(const Scenario& sc, const GridPoint& point, std::int64_t rep,
                                bool keep_trace) {
    const RngStream root(point.seed, static_cast<std::uint64_t>(rep));
    RngStream init_rng = root.substream(0);
    const std::size_t n = point.ensemble.size();
    const std::size_t d = point.ensemble.dim();
    const ControlVector z0 =
        point.warm_start ? *point.warm_start : ControlVector::random(sc.layout, n, d, init_rng);

    NoisyObjective noisy(point.ensemble, sc.shots, root.substream(2));
    const Objective objective = [&noisy](const ControlVector& z) { return noisy(z); };
    std::optional<Objective> evaluator;
    if (keep_trace) {
        evaluator = [&point](const ControlVector& z) { return exact_perr(point.ensemble, povm_for(z)); };
    }

    RunTrace trace = run(z0, objective, sc.gains, sc.iterations, root.substream(1), evaluator);
    RepetitionResult result;
    if (!trace.completed) {
        result.error = trace.error;
        return result;
    }
    result.ok = true;
    result.final_exact = exact_perr(point.ensemble, povm_for(trace.final_z));
    const auto& last = trace.records.back();
    result.final_estimate = 0.5 * (last.f_plus + last.f_minus);
    if (keep_trace) {
        result.trace = std::move(trace.records);
    }
    return result;
}

std::vector<RepetitionResult> run_repetitions_serial(const Scenario& sc, const GridPoint& point,
                                                     bool keep_traces) {
    std::vector<RepetitionResult> out(static_cast<std::size_t>(sc.repetitions));
    for (std::int64_t r = 0; r < sc.repetitions; ++r) {
        out[static_cast<std::size_t>(r)] = guarded_repetition(sc, point, r, keep_traces);
    }
    return out;
}

std::vector<RepetitionResult> run_repetitions_parallel(const Scenario& sc, const GridPoint& point,
                                                       bool keep_traces, int jobs) {
    std::vector<RepetitionResult> out(static_cast<std::size_t>(sc.repetitions));
#ifdef _OPENMP
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t r = 0; r < sc.repetitions; ++r) {
        out[static_cast<std::size_t>(r)] = guarded_repetition(sc, point, r, keep_traces);
    }
    (void)jobs;
    return out;
}

AggregateRow aggregate(const Scenario& sc, double param, double optimal,
                       const std::vector<RepetitionResult>& reps) {
    AggregateRow row;
    row.param = param;
    row.optimal_perr = optimal;
    row.reps = static_cast<std::int64_t>(reps.size());
    row.N = sc.shots;
    row.k_t = sc.iterations;
    row.N_total = sc.copies_per_repetition();

    std::vector<double> exact, estimate, gap;
    for (const auto& r : reps) {
        if (!r.ok) {
            row.median_perr = row.q1_perr = row.q3_perr = kNaN;
            row.median_perr_est = row.median_abs_gap = kNaN;
            return row;
        }
        exact.push_back(r.final_exact);
        estimate.push_back(r.final_estimate);
        gap.push_back(std::abs(r.final_exact - optimal));
    }
    row.median_perr = median(exact);
    row.q1_perr = quantile(exact, 0.25);
    row.q3_perr = quantile(exact, 0.75);
    row.median_perr_est = median(estimate);
    row.median_abs_gap = median(gap);
    return row;
}

std::vector<AggregateRow> SweepResult::rows() const {
    std::vector<AggregateRow> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.row);
    return out;
}

SweepResult run_scenario(const Scenario& sc, const SweepOptions& options) {
    sc.validate();
    SweepResult result{sc, {}};
    for (double param : sc.grid) {
        const GridPoint point = build_grid_point(sc, param);
        GridPointResult gp;
        gp.param = param;
        gp.seed = point.seed;
        gp.optimal_perr = point.reference.p_err_opt;
        gp.method = point.reference.method;
        gp.reps = options.execution == Execution::parallel
                      ? run_repetitions_parallel(sc, point, options.keep_traces, options.jobs)
                      : run_repetitions_serial(sc, point, options.keep_traces);
        for (std::size_t r = 0; r < gp.reps.size(); ++r) {
            if (!gp.reps[r].ok) {
                gp.failed = true;
                gp.error = "repetition " + std::to_string(r) + ": " + gp.reps[r].error;
                break;
            }
        }
        gp.row = aggregate(sc, param, gp.optimal_perr, gp.reps);
        result.points.push_back(std::move(gp));
    }
    return result;
}

std::vector<ConvergencePoint> convergence_profile(const GridPointResult& point) {
    std::vector<ConvergencePoint> out;
    if (point.reps.empty() || point.failed) return out;
    const std::size_t length = point.reps.front().trace.size();
    for (const auto& r : point.reps) {
        if (r.trace.size() != length) {
            throw std::invalid_argument("convergence_profile: traces differ in length");
        }
    }
    std::vector<double> values(point.reps.size()), gaps(point.reps.size());
    for (std::size_t i = 0; i < length; ++i) {
        for (std::size_t r = 0; r < point.reps.size(); ++r) {
            values[r] = point.reps[r].trace[i].exact;
            gaps[r] = std::abs(values[r] - point.optimal_perr);
        }
        out.push_back({point.reps.front().trace[i].k, median(values), quantile(values, 0.25),
                       quantile(values, 0.75), median(gaps)});
    }
    return out;
}

}  // namespace discrim
