#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "discrim/sweep.hpp"

namespace discrim {

inline constexpr const char* kVersion = "discrim 1.0.0";

inline constexpr const char* kAggregateHeader =
    "param,optimal_perr,median_perr,q1_perr,q3_perr,median_perr_est,median_abs_gap,reps,N,k_t,N_total";
inline constexpr const char* kTraceHeader = "iteration,perr_est_plus,perr_est_minus,perr_exact";

std::string aggregate_csv(const std::vector<AggregateRow>& rows);
std::string trace_csv(const std::vector<TraceRecord>& trace);
std::string manifest_json(const SweepResult& result);

struct WrittenFiles {
    std::filesystem::path aggregate;
    std::filesystem::path manifest;
    std::vector<std::filesystem::path> traces;
};

// Writes aggregate.csv, manifest.json and (when repetitions kept traces)
// trace_<param>_<rep>.csv into `out_dir`, creating it if needed.
// Throws std::runtime_error naming the path on I/O failure.
WrittenFiles write_results(const SweepResult& result, const std::filesystem::path& out_dir);

}  // namespace discrim
