#include "discrim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#ifndef DISCRIM_SCENARIO_DIR
#define DISCRIM_SCENARIO_DIR "scenarios"
#endif

namespace discrim {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

// Plain decimal, or a multiple of pi written as "pi", "0.5pi" or "0.5*pi".
double parse_number(const std::string& text) {
    std::string t = trim(text);
    double factor = 1.0;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        t = trim(t.substr(0, t.size() - 2));
        if (!t.empty() && t.back() == '*') t = trim(t.substr(0, t.size() - 1));
        if (t.empty()) return factor;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("'" + text + "' is not a number");
    }
    if (used != t.size() || !std::isfinite(v)) {
        throw std::invalid_argument("'" + text + "' is not a number");
    }
    return v * factor;
}

std::int64_t parse_integer(const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("'" + text + "' is not an integer");
    }
    if (used != t.size()) {
        throw std::invalid_argument("'" + text + "' is not an integer");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        if (!t.empty() && t.front() == '-') throw std::invalid_argument("negative");
        v = std::stoull(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("'" + text + "' is not an unsigned integer");
    }
    if (used != t.size()) {
        throw std::invalid_argument("'" + text + "' is not an unsigned integer");
    }
    return v;
}

bool parse_bool(const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "yes" || t == "1") return true;
    if (t == "false" || t == "no" || t == "0") return false;
    throw std::invalid_argument("'" + text + "' is not a boolean");
}

double round_grid(double v) { return std::round(v * 1e12) / 1e12; }

bool mentions_pi(const std::string& text) { return text.find("pi") != std::string::npos; }

// "start:stop:step" (inclusive) or "v1, v2, ...".
std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 3) {
        const double start = parse_number(parts[0]);
        const double stop = parse_number(parts[1]);
        const double step = parse_number(parts[2]);
        const bool decimal = !std::any_of(parts.begin(), parts.end(), mentions_pi);
        if (!(step > 0.0) || stop < start) {
            throw std::invalid_argument("range needs step > 0 and stop >= start");
        }
        const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 100000) {
            throw std::invalid_argument("range has too many points");
        }
        std::vector<double> out;
        for (std::int64_t i = 0; i < count; ++i) {
            const double v = start + static_cast<double>(i) * step;
            out.push_back(decimal ? round_grid(v) : v);
        }
        if (std::abs(out.back() - stop) < 1e-9 * step) out.back() = stop;
        return out;
    }
    if (parts.size() != 1) {
        throw std::invalid_argument("expected start:stop:step or a comma-separated list");
    }
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        const double v = parse_number(item);
        out.push_back(mentions_pi(item) ? v : round_grid(v));
    }
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        out.push_back(parse_number(item));
    }
    return out;
}

Family parse_family(const std::string& t) {
    if (t == "two-pure") return Family::two_pure;
    if (t == "symmetric-theta") return Family::symmetric_theta;
    if (t == "symmetric-biparam") return Family::symmetric_biparam;
    if (t == "dephasing") return Family::dephasing;
    throw std::invalid_argument("unknown family '" + t +
                                "' (expected two-pure|symmetric-theta|symmetric-biparam|dephasing)");
}

Initialization parse_init(const std::string& t) {
    if (t == "random") return Initialization::random;
    if (t == "warm-start") return Initialization::warm_start;
    throw std::invalid_argument("unknown init '" + t + "' (expected random|warm-start)");
}

DephasingSource parse_source(const std::string& t) {
    if (t == "random-orthogonal") return DephasingSource::random_orthogonal;
    if (t == "two-pure") return DephasingSource::two_pure;
    throw std::invalid_argument("unknown source '" + t + "' (expected random-orthogonal|two-pure)");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format_double(values[i]);
    }
    return out;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "name",     "description", "family",     "grid",        "theta2",     "d",
        "j0",       "source",      "source_s",   "source_seed", "priors",     "N",
        "k_t",      "repetitions", "layout",     "init",        "seed",       "gain_a",
        "gain_A",   "gain_s",      "gain_b",     "gain_r",      "long_running"};
    return keys;
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
        case Family::two_pure: return "two-pure";
        case Family::symmetric_theta: return "symmetric-theta";
        case Family::symmetric_biparam: return "symmetric-biparam";
        case Family::dephasing: return "dephasing";
    }
    return "unknown";
}

std::string to_string(Initialization init) {
    return init == Initialization::random ? "random" : "warm-start";
}

std::string to_string(DephasingSource source) {
    return source == DephasingSource::random_orthogonal ? "random-orthogonal" : "two-pure";
}

std::string format_param(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

ScenarioError::ScenarioError(std::vector<std::string> problems)
    : std::runtime_error([&] {
          std::string msg = "invalid scenario:";
          for (const auto& p : problems) msg += "\n  " + p;
          return msg;
      }()),
      problems_(std::move(problems)) {}

std::size_t Scenario::states() const {
    switch (family) {
        case Family::two_pure:
        case Family::dephasing: return 2;
        case Family::symmetric_theta: return 3;
        case Family::symmetric_biparam: return static_cast<std::size_t>(std::max(d, 0));
    }
    return 0;
}

std::size_t Scenario::dimension() const { return states(); }

std::vector<std::string> Scenario::problems() const {
    std::vector<std::string> out;
    const double pi = std::numbers::pi;
    if (grid.empty()) out.push_back("grid: must not be empty");
    if (shots < 1) out.push_back("N: must be >= 1");
    if (iterations < 1) out.push_back("k_t: must be >= 1");
    if (repetitions < 1) out.push_back("repetitions: must be >= 1");

    auto grid_within = [&](double lo, double hi, const char* what) {
        for (double v : grid) {
            if (!(v >= lo - 1e-12 && v <= hi + 1e-12)) {
                out.push_back(std::string("grid: ") + what + " value " + format_param(v) +
                              " outside [" + format_param(lo) + ", " + format_param(hi) + "]");
            }
        }
    };
    switch (family) {
        case Family::two_pure: grid_within(0.0, 1.0, "s"); break;
        case Family::symmetric_theta:
            grid_within(0.0, pi, "theta1");
            if (!(theta2 >= 0.0 && theta2 <= pi)) out.push_back("theta2: must lie in [0, pi]");
            break;
        case Family::symmetric_biparam:
            grid_within(0.0, 1.0, "alpha");
            if (d < 2) out.push_back("d: must be >= 2");
            if (j0 < 1 || j0 > d - 1) out.push_back("j0: must lie in [1, d-1]");
            break;
        case Family::dephasing:
            grid_within(0.5, 1.0, "p");
            if (source == DephasingSource::two_pure && !(source_s >= 0.0 && source_s <= 1.0)) {
                out.push_back("source_s: must lie in [0, 1]");
            }
            break;
    }

    const bool two_state = family == Family::two_pure || family == Family::dephasing;
    if (two_state) {
        if (priors.size() != 2) {
            out.push_back("priors: two-state families need exactly two priors");
        } else {
            if (priors[0] < 0.0 || priors[1] < 0.0 || std::abs(priors[0] + priors[1] - 1.0) > 1e-12) {
                out.push_back("priors: must be non-negative and sum to 1");
            }
        }
    }
    if (init == Initialization::warm_start && family != Family::dephasing) {
        out.push_back("init: warm-start is only defined for the dephasing family");
    }
    try {
        gains.validate();
    } catch (const std::invalid_argument& e) {
        out.push_back(std::string("gains: ") + e.what());
    }
    return out;
}

void Scenario::validate() const {
    auto p = problems();
    if (!p.empty()) throw ScenarioError(std::move(p));
}

std::map<std::string, std::string> Scenario::to_map() const {
    std::map<std::string, std::string> m;
    m["name"] = name;
    if (!description.empty()) m["description"] = description;
    m["family"] = to_string(family);
    m["grid"] = join(grid);
    switch (family) {
        case Family::symmetric_theta: m["theta2"] = format_double(theta2); break;
        case Family::symmetric_biparam:
            m["d"] = std::to_string(d);
            m["j0"] = std::to_string(j0);
            break;
        case Family::dephasing:
            m["source"] = to_string(source);
            if (source == DephasingSource::two_pure) m["source_s"] = format_double(source_s);
            else m["source_seed"] = std::to_string(source_seed);
            break;
        case Family::two_pure: break;
    }
    if (family == Family::two_pure || family == Family::dephasing) m["priors"] = join(priors);
    m["N"] = std::to_string(shots);
    m["k_t"] = std::to_string(iterations);
    m["repetitions"] = std::to_string(repetitions);
    m["layout"] = to_string(layout);
    m["init"] = to_string(init);
    m["seed"] = std::to_string(seed);
    m["gain_a"] = format_double(gains.a);
    m["gain_A"] = format_double(gains.A);
    m["gain_s"] = format_double(gains.s);
    m["gain_b"] = format_double(gains.b);
    m["gain_r"] = format_double(gains.r);
    m["long_running"] = long_running ? "true" : "false";
    return m;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    std::vector<std::string> problems;
    std::map<std::string, std::pair<std::string, int>> entries;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(lineno);
        if (eq == std::string::npos) {
            problems.push_back(where + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys().contains(key)) {
            problems.push_back(where + ": unknown key '" + key + "'");
            continue;
        }
        if (entries.contains(key)) {
            problems.push_back(where + ": duplicate key '" + key + "'");
            continue;
        }
        entries[key] = {value, lineno};
    }

    Scenario sc;
    auto with = [&](const std::string& key, auto&& apply) {
        const auto it = entries.find(key);
        if (it == entries.end()) return;
        try {
            apply(it->second.first);
        } catch (const std::exception& e) {
            problems.push_back(origin + ":" + std::to_string(it->second.second) + ": " + key + ": " +
                               e.what());
        }
    };
    for (const char* required : {"family", "grid", "N", "k_t"}) {
        if (!entries.contains(required)) {
            problems.push_back(origin + ": missing required key '" + std::string(required) + "'");
        }
    }
    with("name", [&](const std::string& v) { sc.name = v; });
    with("description", [&](const std::string& v) { sc.description = v; });
    with("family", [&](const std::string& v) { sc.family = parse_family(v); });
    with("grid", [&](const std::string& v) { sc.grid = parse_grid(v); });
    with("theta2", [&](const std::string& v) { sc.theta2 = parse_number(v); });
    with("d", [&](const std::string& v) { sc.d = static_cast<int>(parse_integer(v)); });
    with("j0", [&](const std::string& v) { sc.j0 = static_cast<int>(parse_integer(v)); });
    with("source", [&](const std::string& v) { sc.source = parse_source(v); });
    with("source_s", [&](const std::string& v) { sc.source_s = parse_number(v); });
    with("source_seed", [&](const std::string& v) { sc.source_seed = parse_u64(v); });
    with("priors", [&](const std::string& v) { sc.priors = parse_list(v); });
    with("N", [&](const std::string& v) { sc.shots = parse_integer(v); });
    with("k_t", [&](const std::string& v) { sc.iterations = parse_integer(v); });
    with("repetitions", [&](const std::string& v) { sc.repetitions = parse_integer(v); });
    with("layout", [&](const std::string& v) { sc.layout = parse_layout(v); });
    with("init", [&](const std::string& v) { sc.init = parse_init(v); });
    with("seed", [&](const std::string& v) { sc.seed = parse_u64(v); });
    with("gain_a", [&](const std::string& v) { sc.gains.a = parse_number(v); });
    with("gain_A", [&](const std::string& v) { sc.gains.A = parse_number(v); });
    with("gain_s", [&](const std::string& v) { sc.gains.s = parse_number(v); });
    with("gain_b", [&](const std::string& v) { sc.gains.b = parse_number(v); });
    with("gain_r", [&](const std::string& v) { sc.gains.r = parse_number(v); });
    with("long_running", [&](const std::string& v) { sc.long_running = parse_bool(v); });

    if (!problems.empty()) throw ScenarioError(std::move(problems));
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError({path.string() + ": cannot open scenario file"});
    }
    std::stringstream buf;
    buf << in.rdbuf();
    Scenario sc = parse_scenario(buf.str(), path.string());
    if (sc.name.empty()) sc.name = path.stem().string();
    return sc;
}

std::filesystem::path bundled_scenario_dir() {
    if (const char* env = std::getenv("DISCRIM_SCENARIO_DIR"); env && *env) {
        return env;
    }
    return DISCRIM_SCENARIO_DIR;
}

std::vector<std::string> list_bundled_scenarios() {
    std::vector<std::string> names;
    const auto dir = bundled_scenario_dir();
    if (!std::filesystem::is_directory(dir)) return names;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".scn") {
            names.push_back(entry.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

std::filesystem::path resolve_scenario(const std::string& name_or_path) {
    const std::filesystem::path direct(name_or_path);
    if (std::filesystem::exists(direct)) return direct;
    const auto bundled = bundled_scenario_dir() / (name_or_path + ".scn");
    if (std::filesystem::exists(bundled)) return bundled;
    return direct;
}

}  // namespace discrim
