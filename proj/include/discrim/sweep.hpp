#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "discrim/baselines.hpp"
#include "discrim/cspsa.hpp"
#include "discrim/quantum.hpp"
#include "discrim/scenario.hpp"

namespace discrim {

/// Everything needed to train at one grid point.
struct GridPoint {
    double param;
    StateEnsemble ensemble;
    OptimalReference reference;
    // Present for warm-start scenarios.
    std::optional<ControlVector> warm_start;
    std::uint64_t seed;
};

// Seed for a grid point; depends only on the base seed and the parameter
// value, never on the other grid points.
std::uint64_t grid_point_seed(std::uint64_t base_seed, double param);

GridPoint build_grid_point(const Scenario& sc, double param);

struct RepetitionResult {
    bool ok = false;
    std::string error;
    double final_exact = 0.0;
    // Mean of the two estimates taken at the last iteration.
    double final_estimate = 0.0;
    std::vector<TraceRecord> trace;
};

// One training run; repetition r uses stream id r of the grid-point seed.
RepetitionResult run_repetition(const Scenario& sc, const GridPoint& point, std::int64_t rep,
                                bool keep_trace);

enum class Execution { serial, parallel };

// Serial reference loop over repetitions.
std::vector<RepetitionResult> run_repetitions_serial(const Scenario& sc, const GridPoint& point,
                                                     bool keep_traces);

// OpenMP loop over repetitions; `jobs` <= 0 uses the OpenMP default.
// Results are identical to the serial loop.
std::vector<RepetitionResult> run_repetitions_parallel(const Scenario& sc, const GridPoint& point,
                                                       bool keep_traces, int jobs);

struct AggregateRow {
    double param = 0.0;
    double optimal_perr = 0.0;
    double median_perr = 0.0;
    double q1_perr = 0.0;
    double q3_perr = 0.0;
    double median_perr_est = 0.0;
    double median_abs_gap = 0.0;
    std::int64_t reps = 0;
    std::int64_t N = 0;
    std::int64_t k_t = 0;
    std::int64_t N_total = 0;
};

struct GridPointResult {
    double param = 0.0;
    std::uint64_t seed = 0;
    double optimal_perr = 0.0;
    ReferenceMethod method = ReferenceMethod::helstrom_pure;
    bool failed = false;
    std::string error;
    AggregateRow row;
    std::vector<RepetitionResult> reps;
};

AggregateRow aggregate(const Scenario& sc, double param, double optimal,
                       const std::vector<RepetitionResult>& reps);

struct SweepOptions {
    bool keep_traces = false;
    Execution execution = Execution::parallel;
    int jobs = 0;
};

struct SweepResult {
    Scenario scenario;
    std::vector<GridPointResult> points;

    std::vector<AggregateRow> rows() const;
};

// A degenerate control in any repetition fails that grid point only; the
// remaining grid points still run.
SweepResult run_scenario(const Scenario& sc, const SweepOptions& options = {});

// Per-iteration median and quartiles of the exact error across repetitions,
// plus the median absolute gap to `optimal`. Requires kept traces.
struct ConvergencePoint {
    std::int64_t iteration;
    double median_perr;
    double q1_perr;
    double q3_perr;
    double median_abs_gap;
};

std::vector<ConvergencePoint> convergence_profile(const GridPointResult& point);

}  // namespace discrim
