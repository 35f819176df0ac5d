// discrim: train simulated measurement devices over scenario sweeps.
//
//   discrim run --scenario <path|name> --out <dir> [--seed <u64>] [--reps <n>] [--traces] [--jobs <n>]
//   discrim list-scenarios
//   discrim validate --scenario <path|name>
//
// Exit codes: 0 success, 1 validation error, 2 runtime failure.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"

#include "discrim/results.hpp"
#include "discrim/scenario.hpp"
#include "discrim/sweep.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Train measurement devices to discriminate unknown quantum states"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::int64_t reps = 0;
    bool traces = false;
    int jobs = 0;

    auto* run_cmd = app.add_subcommand("run", "Run a scenario sweep and write results");
    run_cmd->add_option("--scenario", scenario_arg, "Scenario file or bundled scenario name")->required();
    run_cmd->add_option("--out", out_dir, "Output directory")->required();
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the base seed");
    auto* reps_opt = run_cmd->add_option("--reps", reps, "Override the repetition count");
    run_cmd->add_flag("--traces", traces, "Write per-repetition trace CSVs");
    run_cmd->add_option("--jobs", jobs, "Worker threads (0 = OpenMP default)");

    auto* list_cmd = app.add_subcommand("list-scenarios", "List bundled scenarios");

    auto* validate_cmd = app.add_subcommand("validate", "Validate a scenario file");
    validate_cmd->add_option("--scenario", scenario_arg, "Scenario file or bundled scenario name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    if (list_cmd->parsed()) {
        for (const auto& name : discrim::list_bundled_scenarios()) {
            try {
                const auto sc = discrim::load_scenario(discrim::resolve_scenario(name));
                std::cout << name << "\t" << discrim::to_string(sc.family) << "\t"
                          << (sc.long_running ? "long-running\t" : "\t") << sc.description << "\n";
            } catch (const std::exception&) {
                std::cout << name << "\t(invalid)\n";
            }
        }
        return 0;
    }

    discrim::Scenario sc;
    try {
        sc = discrim::load_scenario(discrim::resolve_scenario(scenario_arg));
        if (*seed_opt) sc.seed = seed;
        if (*reps_opt) sc.repetitions = reps;
        sc.validate();
    } catch (const discrim::ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }

    if (validate_cmd->parsed()) {
        std::cout << sc.name << ": ok (" << discrim::to_string(sc.family) << ", " << sc.grid.size()
                  << " grid points, N=" << sc.shots << ", k_t=" << sc.iterations
                  << ", reps=" << sc.repetitions << ")\n";
        return 0;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        discrim::SweepOptions options;
        options.keep_traces = traces;
        options.jobs = jobs;
        const auto result = discrim::run_scenario(sc, options);
        const auto files = discrim::write_results(result, out_dir);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        bool any_failed = false;
        for (const auto& p : result.points) {
            const auto& r = p.row;
            if (p.failed) {
                any_failed = true;
                std::cerr << "grid point " << discrim::format_param(p.param) << " failed: " << p.error << "\n";
                continue;
            }
            std::printf("param=%-8s optimal=%.6f median=%.6f iqr=[%.6f, %.6f] gap=%.2e\n",
                        discrim::format_param(r.param).c_str(), r.optimal_perr, r.median_perr,
                        r.q1_perr, r.q3_perr, r.median_abs_gap);
        }
        std::printf("wrote %s (%zu trace files) in %.1fs\n", files.aggregate.string().c_str(),
                    files.traces.size(), secs);
        return any_failed ? kExitRuntime : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
