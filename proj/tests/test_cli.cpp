#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "megsched/cli/commands.hpp"
#include "megsched/cli/config.hpp"
#include "megsched/harness/traces.hpp"

using namespace megsched;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("megsched_test_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

json bundled_config() {
    std::ifstream in(fs::path(MEGSCHED_SOURCE_DIR) / "configs" / "benchmark.json");
    return json::parse(in);
}

fs::path write_config(const fs::path& dir, const json& j, const std::string& name = "config.json") {
    const auto p = dir / name;
    std::ofstream(p) << j.dump(2);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json short_config(std::size_t slots = 48) {
    auto j = bundled_config();
    j["traces"]["synthetic"]["slots"] = slots;
    return j;
}

} // namespace

TEST_CASE("the bundled config equals the built-in defaults") {
    const auto loaded = load_config(fs::path(MEGSCHED_SOURCE_DIR) / "configs" / "benchmark.json");
    REQUIRE(loaded.errors.empty());
    const auto d = default_config();
    const auto& c = loaded.config;
    CHECK(c.park.megps.size() == d.park.megps.size());
    CHECK(c.park.users.size() == d.park.users.size());
    CHECK(c.park.elastic_loads.size() == d.park.elastic_loads.size());
    CHECK(c.inner.subproblem.smoothing == d.inner.subproblem.smoothing);
    CHECK(c.outer.rho == d.outer.rho);
    CHECK(c.outer.warm_start == d.outer.warm_start);
    CHECK(c.traces.seed == d.traces.seed);
    CHECK(c.traces.slots == d.traces.slots);
    const auto a = materialize_traces(c);
    const auto b = materialize_traces(d);
    REQUIRE(a.size() == b.size());
    for (std::size_t t = 0; t < a.size(); ++t) CHECK(a.slots[t].load == b.slots[t].load);
}

TEST_CASE("run writes every output file and exits 0") {
    TempDir tmp;
    CliOptions opts;
    opts.config = write_config(tmp.path, short_config());
    opts.seed = 42;
    opts.out = tmp.path / "out";
    std::ostringstream out, err;
    REQUIRE(cmd_run(opts, out, err) == 0);
    CHECK(err.str().empty());
    for (const char* f : {"summary.json", "telemetry.csv", "telemetry.json", "cdf.csv", "costs.csv", "dispatch.csv",
                          "traces.csv"})
        CHECK(fs::exists(*opts.out / f));

    const auto summary = json::parse(slurp(*opts.out / "summary.json"));
    CHECK(summary["slots"] == 48);
    CHECK(summary["case"] == "proposed");
    CHECK(summary["infeasible_slots"] == 0);

    // The echoed traces parse back under the park's schema.
    const TraceSchema schema{2, 3, 4};
    CHECK(load_traces(*opts.out / "traces.csv", schema).size() == 48);
}

TEST_CASE("runs are byte-identical") {
    TempDir tmp;
    CliOptions opts;
    opts.config = write_config(tmp.path, short_config(96));
    std::ostringstream out, err;
    opts.out = tmp.path / "a";
    REQUIRE(cmd_run(opts, out, err) == 0);
    opts.out = tmp.path / "b";
    REQUIRE(cmd_run(opts, out, err) == 0);
    for (const char* f : {"summary.json", "telemetry.csv", "telemetry.json", "cdf.csv", "costs.csv", "dispatch.csv"})
        CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));

    opts.seed = 7;
    opts.out = tmp.path / "c";
    REQUIRE(cmd_run(opts, out, err) == 0);
    CHECK(slurp(tmp.path / "a" / "costs.csv") != slurp(tmp.path / "c" / "costs.csv"));
}

TEST_CASE("invalid parameters fail with a message") {
    TempDir tmp;
    auto j = short_config();
    j["park"]["megps"][0]["eta_boiler"] = 1.2;
    CliOptions opts;
    opts.config = write_config(tmp.path, j);
    opts.out = tmp.path / "out";
    std::ostringstream out, err;
    CHECK(cmd_run(opts, out, err) != 0);
    CHECK(err.str().find("eta_boiler") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.path / "out" / "summary.json"));
}

TEST_CASE("validate") {
    TempDir tmp;
    std::ostringstream out, err;
    CliOptions opts;

    SUBCASE("the bundled config is valid") {
        opts.config = fs::path(MEGSCHED_SOURCE_DIR) / "configs" / "benchmark.json";
        CHECK(cmd_validate(opts, out, err) == 0);
        CHECK(out.str().find("config valid") != std::string::npos);
    }
    SUBCASE("built-in defaults are valid") { CHECK(cmd_validate(opts, out, err) == 0); }
    SUBCASE("every violation is listed") {
        auto j = short_config();
        j["park"]["megps"][0]["eta_boiler"] = 1.2;
        j["park"]["users"][0]["curtail_ratio"] = -0.1;
        j["park"]["users"][1]["suppliers"] = json::array({3});
        j["park"]["bogus"] = 1;
        opts.config = write_config(tmp.path, j);
        CHECK(cmd_validate(opts, out, err) == 1);
        const auto e = err.str();
        CHECK(e.find("eta_boiler") != std::string::npos);
        CHECK(e.find("curtail_ratio") != std::string::npos);
        CHECK(e.find("suppliers") != std::string::npos);
        CHECK(e.find("bogus") != std::string::npos);
        CHECK(e.find("4 violation") != std::string::npos);
    }
    SUBCASE("a sale price above the purchase price in a trace file is reported") {
        std::ofstream(tmp.path / "traces.csv") << "t,p_e,p_o,p_g,R_1,R_2,X_1,X_2,X_3\n"
                                                  "1,0.6,0.3,0.4,0.5,0.25,1,0.8,0.7\n"
                                                  "2,0.3,0.6,0.4,0.5,0.25,1,0.8,0.7\n";
        auto j = short_config();
        j["traces"] = {{"file", "traces.csv"}};
        opts.config = write_config(tmp.path, j);
        CHECK(cmd_validate(opts, out, err) == 1);
        CHECK(err.str().find("p_o > p_e") != std::string::npos);
    }
    SUBCASE("a readable trace file relative to the config is accepted") {
        std::ofstream(tmp.path / "traces.csv") << "t,p_e,p_o,p_g,R_1,R_2,X_1,X_2,X_3\n"
                                                  "1,0.6,0.3,0.4,0.5,0.25,1,0.8,0.7\n";
        auto j = short_config();
        j["traces"] = {{"file", "traces.csv"}};
        opts.config = write_config(tmp.path, j);
        CHECK(cmd_validate(opts, out, err) == 0);
    }
    SUBCASE("a missing trace file is reported") {
        auto j = short_config();
        j["traces"] = {{"file", "nowhere.csv"}};
        opts.config = write_config(tmp.path, j);
        CHECK(cmd_validate(opts, out, err) == 1);
        CHECK(err.str().find("nowhere.csv") != std::string::npos);
    }
    SUBCASE("malformed JSON is reported") {
        std::ofstream(tmp.path / "bad.json") << "{\"park\": ";
        opts.config = tmp.path / "bad.json";
        CHECK(cmd_validate(opts, out, err) == 1);
        CHECK_FALSE(err.str().empty());
    }
    SUBCASE("a missing config file is reported") {
        opts.config = tmp.path / "absent.json";
        CHECK(cmd_validate(opts, out, err) == 1);
    }
}

TEST_CASE("compare reports all three cases") {
    TempDir tmp;
    CliOptions opts;
    opts.config = write_config(tmp.path, short_config());
    opts.out = tmp.path / "cmp";
    std::ostringstream out, err;
    REQUIRE(cmd_compare(opts, out, err) == 0);
    const auto s = json::parse(slurp(*opts.out / "compare_summary.json"));
    for (const char* c : {"proposed", "case1", "case2"}) CHECK(s.dump().find(c) != std::string::npos);
    CHECK(fs::exists(*opts.out / "compare_costs.csv"));
    CHECK(fs::exists(*opts.out / "compare_cdf.csv"));
    for (const char* c : {"proposed", "case1", "case2"}) CHECK(out.str().find(c) != std::string::npos);
}

TEST_CASE("command-line overrides") {
    std::vector<std::string> errors;
    CliOptions opts;
    opts.seed = 9;
    opts.mode = InnerMode::Plain;
    opts.warm_start = true;
    opts.out = "elsewhere";
    const auto cfg = resolve_config(opts, errors);
    CHECK(errors.empty());
    CHECK(cfg.traces.seed == 9);
    CHECK(cfg.inner.mode == InnerMode::Plain);
    CHECK(cfg.outer.warm_start);
    CHECK(cfg.output_dir == fs::path("elsewhere"));
}
