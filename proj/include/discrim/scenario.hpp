#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "discrim/cspsa.hpp"
#include "discrim/povm.hpp"

namespace discrim {

enum class Family { two_pure, symmetric_theta, symmetric_biparam, dephasing };
enum class Initialization { random, warm_start };
enum class DephasingSource { random_orthogonal, two_pure };

std::string to_string(Family family);
std::string to_string(Initialization init);
std::string to_string(DephasingSource source);

/// Parse or validation failure. `problems` lists every violated constraint,
/// each prefixed with the offending line or key.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// One experiment: a family of ensembles swept over `grid`, with
/// `repetitions` independent training runs per grid point.
///
/// The grid parameter is s (two-pure), theta1 (symmetric-theta), alpha
/// (symmetric-biparam) or the channel strength p (dephasing).
struct Scenario {
    std::string name;
    std::string description;
    Family family = Family::two_pure;
    std::vector<double> grid;

    double theta2 = 0.0;               // symmetric-theta
    int d = 0;                         // symmetric-biparam
    int j0 = 0;                        // symmetric-biparam
    DephasingSource source = DephasingSource::random_orthogonal;
    double source_s = 0.0;             // dephasing, source = two-pure
    std::uint64_t source_seed = 0;     // dephasing, source = random-orthogonal

    std::vector<double> priors{0.5, 0.5};
    std::int64_t shots = 0;            // N, copies of each state per evaluation
    std::int64_t iterations = 0;       // k_t
    std::int64_t repetitions = 100;
    Layout layout = Layout::general;
    Initialization init = Initialization::random;
    std::uint64_t seed = 1;
    GainSchedule gains;
    bool long_running = false;

    // Number of states discriminated (and POVM outcomes).
    std::size_t states() const;
    // Hilbert-space dimension.
    std::size_t dimension() const;
    // 2 N k_t: copies of each state consumed by one repetition.
    std::int64_t copies_per_repetition() const { return 2 * shots * iterations; }

    // Every violated constraint; empty when valid.
    std::vector<std::string> problems() const;
    void validate() const;

    // Flat key -> value echo in canonical formatting.
    std::map<std::string, std::string> to_map() const;
};

Scenario parse_scenario(const std::string& text, const std::string& origin = "<input>");
Scenario load_scenario(const std::filesystem::path& path);

// Directory holding the bundled scenario files (DISCRIM_SCENARIO_DIR
// environment variable overrides the compiled-in location).
std::filesystem::path bundled_scenario_dir();
std::vector<std::string> list_bundled_scenarios();

// `name_or_path` is used as a path if it exists, otherwise looked up as
// <bundled dir>/<name>.scn.
std::filesystem::path resolve_scenario(const std::string& name_or_path);

// Canonical text of a grid value, used in file names and seed derivation.
std::string format_param(double value);

}  // namespace discrim
