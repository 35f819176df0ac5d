#include "discrim/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace discrim {

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
    std::string out = kAggregateHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += num(r.param) + ',' + num(r.optimal_perr) + ',' + num(r.median_perr) + ',' +
               num(r.q1_perr) + ',' + num(r.q3_perr) + ',' + num(r.median_perr_est) + ',' +
               num(r.median_abs_gap) + ',' + std::to_string(r.reps) + ',' + std::to_string(r.N) +
               ',' + std::to_string(r.k_t) + ',' + std::to_string(r.N_total) + '\n';
    }
    return out;
}

std::string trace_csv(const std::vector<TraceRecord>& trace) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const auto& t : trace) {
        out += std::to_string(t.k) + ',' + num(t.f_plus) + ',' + num(t.f_minus) + ',' + num(t.exact) + '\n';
    }
    return out;
}

std::string manifest_json(const SweepResult& result) {
    using nlohmann::ordered_json;
    const Scenario& sc = result.scenario;
    ordered_json m;
    m["version"] = kVersion;
    ordered_json echo = ordered_json::object();
    for (const auto& [k, v] : sc.to_map()) echo[k] = v;
    m["scenario"] = echo;
    m["base_seed"] = sc.seed;
    ordered_json points = ordered_json::array();
    for (const auto& p : result.points) {
        ordered_json jp;
        jp["param"] = format_param(p.param);
        jp["seed"] = p.seed;
        jp["reference"] = to_string(p.method);
        jp["optimal_perr"] = p.optimal_perr;
        jp["status"] = p.failed ? "failed" : "ok";
        if (p.failed) jp["error"] = p.error;
        points.push_back(jp);
    }
    m["grid_points"] = points;
    const auto per_rep = sc.copies_per_repetition();
    m["resources"] = {
        {"copies_per_state_per_evaluation", sc.shots},
        {"evaluations_per_repetition", 2 * sc.iterations},
        {"N_t_per_state_per_repetition", per_rep},
        {"states", sc.states()},
        {"repetitions", sc.repetitions},
        {"N_t_per_state_per_grid_point", per_rep * sc.repetitions},
    };
    return m.dump(2) + '\n';
}

WrittenFiles write_results(const SweepResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
    }
    WrittenFiles files;
    files.aggregate = out_dir / "aggregate.csv";
    write_file(files.aggregate, aggregate_csv(result.rows()));
    for (const auto& p : result.points) {
        for (std::size_t r = 0; r < p.reps.size(); ++r) {
            if (p.reps[r].trace.empty()) continue;
            const auto path = out_dir / ("trace_" + format_param(p.param) + "_" + std::to_string(r) + ".csv");
            write_file(path, trace_csv(p.reps[r].trace));
            files.traces.push_back(path);
        }
    }
    files.manifest = out_dir / "manifest.json";
    write_file(files.manifest, manifest_json(result));
    return files;
}

}  // namespace discrim
