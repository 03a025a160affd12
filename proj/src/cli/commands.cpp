#include "megsched/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "megsched/core/error.hpp"
#include "megsched/core/format.hpp"
#include "megsched/harness/cases.hpp"
#include "megsched/harness/metrics.hpp"
#include "megsched/harness/telemetry.hpp"

namespace megsched {
namespace {

using nlohmann::json;

std::string mode_name(InnerMode m) { return m == InnerMode::Fast ? "fast" : "plain"; }

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& w) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    w(f);
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

json run_summary(const CaseRun& run) {
    const auto& r = run.schedule;
    std::size_t max_it = 0;
    double mean_it = 0.0, unserved = 0.0, spilled = 0.0;
    for (const auto& s : r.slots) {
        max_it = std::max(max_it, s.iterations);
        mean_it += static_cast<double>(s.iterations);
        unserved += s.unserved;
        spilled += s.spilled;
    }
    mean_it /= static_cast<double>(r.slots.size());
    const double thr = r.total_throughput();
    return {{"case", to_string(run.policy)},
            {"mode", mode_name(run.setup.inner.mode)},
            {"slots", r.slots.size()},
            {"total_cost", r.total_cost()},
            {"median_iterations", median_iterations(r)},
            {"mean_iterations", mean_it},
            {"max_iterations", max_it},
            {"total_clipped", r.total_clipped()},
            {"total_throughput", thr},
            {"clipped_fraction", thr > 0.0 ? r.total_clipped() / thr : 0.0},
            {"infeasible_slots", r.infeasible_slots()},
            {"unserved", unserved},
            {"spilled", spilled}};
}

bool prepare(const CliOptions& opts, std::ostream& err, RunConfig& cfg, TraceSet& traces) {
    std::vector<std::string> errors;
    cfg = resolve_config(opts, errors);
    if (errors.empty()) {
        auto more = check_config(cfg);
        errors.insert(errors.end(), more.begin(), more.end());
    }
    if (errors.empty()) {
        try {
            traces = materialize_traces(cfg);
        } catch (const ParseError& e) {
            errors.push_back("traces: " + std::string(e.what()) + " (row " + std::to_string(e.row()) + ", column " +
                             std::to_string(e.column()) + ")");
        } catch (const std::exception& e) {
            errors.push_back(std::string("traces: ") + e.what());
        }
    }
    for (const auto& e : errors) err << "error: " << e << '\n';
    return errors.empty();
}

} // namespace

RunConfig resolve_config(const CliOptions& opts, std::vector<std::string>& errors) {
    RunConfig cfg = default_config();
    if (opts.config) {
        auto loaded = load_config(*opts.config);
        errors.insert(errors.end(), loaded.errors.begin(), loaded.errors.end());
        cfg = std::move(loaded.config);
    }
    if (opts.seed) cfg.traces.seed = *opts.seed;
    if (opts.out) cfg.output_dir = *opts.out;
    if (opts.mode) cfg.inner.mode = *opts.mode;
    if (opts.warm_start) cfg.outer.warm_start = *opts.warm_start;
    return cfg;
}

int cmd_validate(const CliOptions& opts, std::ostream& out, std::ostream& err) {
    std::vector<std::string> errors;
    const RunConfig cfg = resolve_config(opts, errors);
    auto more = check_config(cfg);
    errors.insert(errors.end(), more.begin(), more.end());

    std::size_t slots = 0;
    const bool trace_file_ok = !cfg.traces.file || std::filesystem::exists(*cfg.traces.file);
    const bool synth_ok = cfg.traces.file || (cfg.traces.profile.megps == cfg.park.megps.size() &&
                                              cfg.traces.profile.users == cfg.park.users.size());
    if (trace_file_ok && synth_ok) {
        try {
            TraceSet traces;
            if (cfg.traces.file) {
                TraceSchema schema{cfg.park.megps.size(), cfg.park.users.size(), cfg.park.elastic_loads.size()};
                traces = load_traces(*cfg.traces.file, schema);
            } else {
                traces = synth_traces(cfg.traces.seed, cfg.traces.slots, cfg.traces.profile);
            }
            slots = traces.size();
            auto v = validate(traces, cfg.park);
            for (auto& s : v) errors.push_back("traces: " + s);
        } catch (const ParseError& e) {
            errors.push_back("traces: " + std::string(e.what()) + " (row " + std::to_string(e.row()) + ", column " +
                             std::to_string(e.column()) + ")");
        } catch (const std::exception& e) {
            errors.push_back(std::string("traces: ") + e.what());
        }
    }
    for (const auto& e : errors) err << "error: " << e << '\n';
    if (!errors.empty()) {
        err << errors.size() << " violation(s)\n";
        return 1;
    }
    out << "config valid: " << cfg.park.megps.size() << " plants, " << cfg.park.users.size() << " users, " << slots
        << " slots\n";
    return 0;
}

int cmd_run(const CliOptions& opts, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    TraceSet traces;
    if (!prepare(opts, err, cfg, traces)) return 1;
    try {
        const auto run = run_case(cfg.policy, cfg.park, traces, cfg.initial(), cfg.inner, cfg.outer);
        const auto& r = run.schedule;
        const auto& dir = cfg.output_dir;
        std::filesystem::create_directories(dir);
        write_file(dir / "summary.json", [&](std::ostream& f) { f << run_summary(run).dump(2) << '\n'; });
        write_file(dir / "telemetry.csv", [&](std::ostream& f) { write_telemetry_csv(f, r); });
        write_file(dir / "telemetry.json", [&](std::ostream& f) { write_telemetry_json(f, r); });
        write_file(dir / "cdf.csv", [&](std::ostream& f) { write_cdf_csv(f, iteration_cdf(r)); });
        write_file(dir / "costs.csv", [&](std::ostream& f) { write_costs_csv(f, r); });
        write_file(dir / "dispatch.csv", [&](std::ostream& f) { write_dispatch_csv(f, r, run.setup.traces); });
        write_file(dir / "traces.csv", [&](std::ostream& f) { write_traces(f, run.setup.traces); });
        out << to_string(run.policy) << " (" << mode_name(run.setup.inner.mode) << "): " << r.slots.size()
            << " slots, total cost " << format_number(r.total_cost()) << ", median iterations "
            << format_number(median_iterations(r)) << '\n';
        if (r.infeasible_slots() > 0) out << "warning: " << r.infeasible_slots() << " slot(s) needed unresolved recourse\n";
        out << "wrote " << dir.string() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int cmd_compare(const CliOptions& opts, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    TraceSet traces;
    if (!prepare(opts, err, cfg, traces)) return 1;
    try {
        const auto init = cfg.initial();
        std::vector<CaseRun> runs;
        for (auto c : {PolicyCase::Proposed, PolicyCase::Case1, PolicyCase::Case2})
            runs.push_back(run_case(c, cfg.park, traces, init, cfg.inner, cfg.outer));

        InnerLoopConfig fast_cfg = cfg.inner, plain_cfg = cfg.inner;
        fast_cfg.mode = InnerMode::Fast;
        plain_cfg.mode = InnerMode::Plain;
        const auto fast = run_horizon(cfg.park, traces, init, fast_cfg, cfg.outer);
        const auto plain = run_horizon(cfg.park, traces, init, plain_cfg, cfg.outer);

        const auto& dir = cfg.output_dir;
        std::filesystem::create_directories(dir);

        json cases = json::object();
        for (const auto& run : runs) cases[to_string(run.policy)] = run_summary(run);
        const double fm = median_iterations(fast), pm = median_iterations(plain);
        json summary{{"cases", cases},
                     {"modes",
                      {{"fast", {{"median_iterations", fm}, {"total_cost", fast.total_cost()}}},
                       {"plain", {{"median_iterations", pm}, {"total_cost", plain.total_cost()}}}}},
                     {"median_iteration_ratio", pm > 0.0 ? fm / pm : 0.0}};
        write_file(dir / "compare_summary.json", [&](std::ostream& f) { f << summary.dump(2) << '\n'; });

        std::array<std::array<double, 24>, 3> hourly{};
        for (std::size_t c = 0; c < runs.size(); ++c) hourly[c] = hourly_costs(runs[c].schedule);
        write_file(dir / "compare_costs.csv", [&](std::ostream& f) {
            f << "hour,proposed,case1,case2\n";
            for (std::size_t h = 0; h < 24; ++h)
                f << h << ',' << format_number(hourly[0][h]) << ',' << format_number(hourly[1][h]) << ','
                  << format_number(hourly[2][h]) << '\n';
        });

        const auto cf = iteration_cdf(fast), cp = iteration_cdf(plain);
        std::size_t top = std::max(cf.back().iterations, cp.back().iterations);
        write_file(dir / "compare_cdf.csv", [&](std::ostream& f) {
            f << "iterations,fast,plain\n";
            for (std::size_t n = 1; n <= top; ++n)
                f << n << ',' << format_number(cdf_at(cf, n)) << ',' << format_number(cdf_at(cp, n)) << '\n';
        });

        out << "case      total_cost   median_iterations\n";
        for (const auto& run : runs) {
            std::string name = to_string(run.policy);
            name.resize(10, ' ');
            out << name << format_number(run.schedule.total_cost()) << "   "
                << format_number(median_iterations(run.schedule)) << '\n';
        }
        out << "median iterations: fast " << format_number(fm) << ", plain " << format_number(pm) << '\n';
        out << "wrote " << dir.string() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace megsched
