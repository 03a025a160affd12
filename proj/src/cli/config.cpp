#include "megsched/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "megsched/core/error.hpp"
#include "megsched/harness/benchmark.hpp"

namespace megsched {
namespace {

using nlohmann::json;

class Reader {
public:
    explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

    void fail(const std::string& where, const std::string& msg) { errors_.push_back(where + ": " + msg); }

    bool object(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
        if (!j.is_object()) {
            fail(where, "expected an object");
            return false;
        }
        std::set<std::string> known(keys.begin(), keys.end());
        for (const auto& [k, v] : j.items())
            if (!known.count(k)) fail(where, "unknown key '" + k + "'");
        return true;
    }

    void number(const json& j, const char* key, const std::string& where, double& out) {
        if (!j.contains(key)) return;
        const auto& v = j.at(key);
        if (!v.is_number()) return fail(where + "." + key, "expected a number");
        out = v.get<double>();
    }

    template <class T>
    void count(const json& j, const char* key, const std::string& where, T& out) {
        if (!j.contains(key)) return;
        const auto& v = j.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            return fail(where + "." + key, "expected a non-negative integer");
        out = static_cast<T>(v.get<unsigned long long>());
    }

    void boolean(const json& j, const char* key, const std::string& where, bool& out) {
        if (!j.contains(key)) return;
        const auto& v = j.at(key);
        if (!v.is_boolean()) return fail(where + "." + key, "expected true or false");
        out = v.get<bool>();
    }

    std::optional<std::string> string(const json& j, const char* key, const std::string& where) {
        if (!j.contains(key)) return std::nullopt;
        const auto& v = j.at(key);
        if (!v.is_string()) {
            fail(where + "." + key, "expected a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    void numbers(const json& j, const char* key, const std::string& where, std::vector<double>& out) {
        if (!j.contains(key)) return;
        const auto& v = j.at(key);
        if (!v.is_array()) return fail(where + "." + key, "expected an array of numbers");
        std::vector<double> tmp;
        for (const auto& x : v) {
            if (!x.is_number()) return fail(where + "." + key, "expected an array of numbers");
            tmp.push_back(x.get<double>());
        }
        out = std::move(tmp);
    }

    // Plant references are 1-based in the file.
    std::optional<std::size_t> megp_ref(const json& v, const std::string& where) {
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            fail(where, "expected a plant number >= 1");
            return std::nullopt;
        }
        return static_cast<std::size_t>(v.get<long long>() - 1);
    }

private:
    std::vector<std::string>& errors_;
};

MegpParams read_megp(Reader& r, const json& j, const std::string& where) {
    MegpParams p;
    if (!r.object(j, where,
                  {"eta_charge_e", "eta_discharge_e", "eta_charge_h", "eta_discharge_h", "eta_chp_e", "eta_chp_h",
                   "eta_boiler", "battery_min", "battery_max", "tank_min", "tank_max", "charge_e_max",
                   "discharge_e_max", "charge_h_max", "discharge_h_max", "chp_e_max", "chp_h_max", "boiler_h_max",
                   "supply_max"}))
        return p;
    r.number(j, "eta_charge_e", where, p.eta_charge_e);
    r.number(j, "eta_discharge_e", where, p.eta_discharge_e);
    r.number(j, "eta_charge_h", where, p.eta_charge_h);
    r.number(j, "eta_discharge_h", where, p.eta_discharge_h);
    r.number(j, "eta_chp_e", where, p.eta_chp_e);
    r.number(j, "eta_chp_h", where, p.eta_chp_h);
    r.number(j, "eta_boiler", where, p.eta_boiler);
    r.number(j, "battery_min", where, p.battery_min);
    r.number(j, "battery_max", where, p.battery_max);
    r.number(j, "tank_min", where, p.tank_min);
    r.number(j, "tank_max", where, p.tank_max);
    r.number(j, "charge_e_max", where, p.charge_e_max);
    r.number(j, "discharge_e_max", where, p.discharge_e_max);
    r.number(j, "charge_h_max", where, p.charge_h_max);
    r.number(j, "discharge_h_max", where, p.discharge_h_max);
    r.number(j, "chp_e_max", where, p.chp_e_max);
    r.number(j, "chp_h_max", where, p.chp_h_max);
    r.number(j, "boiler_h_max", where, p.boiler_h_max);
    if (j.contains("supply_max")) {
        std::vector<double> v;
        r.numbers(j, "supply_max", where, v);
        if (v.size() == kCarrierCount)
            for (std::size_t c = 0; c < kCarrierCount; ++c) p.supply_max.values[c] = v[c];
        else
            r.fail(where + ".supply_max", "expected [electricity, heat, gas]");
    }
    return p;
}

UserParams read_user(Reader& r, const json& j, const std::string& where) {
    UserParams u;
    if (!r.object(j, where, {"unsatisfaction", "curtail_ratio", "served_value", "suppliers"})) return u;
    r.number(j, "unsatisfaction", where, u.unsatisfaction);
    r.number(j, "curtail_ratio", where, u.curtail_ratio);
    r.number(j, "served_value", where, u.served_value);
    if (j.contains("suppliers")) {
        if (!j["suppliers"].is_array()) {
            r.fail(where + ".suppliers", "expected an array of plant numbers");
        } else {
            for (const auto& s : j["suppliers"])
                if (auto k = r.megp_ref(s, where + ".suppliers")) u.suppliers.push_back(*k);
        }
    }
    return u;
}

ElasticLoadParams read_elastic(Reader& r, const json& j, const std::string& where) {
    ElasticLoadParams q;
    if (!r.object(j, where, {"carrier", "alpha", "beta", "max", "megp"})) return q;
    if (auto c = r.string(j, "carrier", where)) {
        if (auto parsed = parse_carrier(*c))
            q.carrier = *parsed;
        else
            r.fail(where + ".carrier", "expected electricity, heat or gas");
    }
    r.number(j, "alpha", where, q.alpha);
    r.number(j, "beta", where, q.beta);
    r.number(j, "max", where, q.max);
    if (j.contains("megp"))
        if (auto k = r.megp_ref(j["megp"], where + ".megp")) q.megp = *k;
    return q;
}

void read_park(Reader& r, const json& j, ParkParams& park) {
    if (!r.object(j, "park", {"import_max", "export_max", "gas_max", "megps", "users", "elastic_loads"})) return;
    r.number(j, "import_max", "park", park.import_max);
    r.number(j, "export_max", "park", park.export_max);
    r.number(j, "gas_max", "park", park.gas_max);
    auto list = [&](const char* key, auto read, auto& out) {
        if (!j.contains(key)) return;
        if (!j[key].is_array()) return r.fail(std::string("park.") + key, "expected an array");
        out.clear();
        for (std::size_t n = 0; n < j[key].size(); ++n)
            out.push_back(read(r, j[key][n], std::string("park.") + key + "[" + std::to_string(n + 1) + "]"));
    };
    list("megps", read_megp, park.megps);
    list("users", read_user, park.users);
    list("elastic_loads", read_elastic, park.elastic_loads);
}

void read_profile(Reader& r, const json& j, const std::string& where, SynthProfile& p) {
    if (!r.object(j, where,
                  {"megps", "users", "price_valley", "price_flat", "price_peak", "price_noise", "price_sale",
                   "price_gas", "daylight_start", "daylight_end", "solar_peak", "cloud_min", "load_base",
                   "load_morning", "load_evening", "load_noise"}))
        return;
    r.count(j, "megps", where, p.megps);
    r.count(j, "users", where, p.users);
    r.number(j, "price_valley", where, p.price_valley);
    r.number(j, "price_flat", where, p.price_flat);
    r.number(j, "price_peak", where, p.price_peak);
    r.number(j, "price_noise", where, p.price_noise);
    r.number(j, "price_sale", where, p.price_sale);
    r.number(j, "price_gas", where, p.price_gas);
    r.count(j, "daylight_start", where, p.daylight_start);
    r.count(j, "daylight_end", where, p.daylight_end);
    r.numbers(j, "solar_peak", where, p.solar_peak);
    r.number(j, "cloud_min", where, p.cloud_min);
    r.numbers(j, "load_base", where, p.load_base);
    r.number(j, "load_morning", where, p.load_morning);
    r.number(j, "load_evening", where, p.load_evening);
    r.number(j, "load_noise", where, p.load_noise);
}

void read_traces(Reader& r, const json& j, const std::filesystem::path& base_dir, TraceSource& src) {
    if (!r.object(j, "traces", {"file", "synthetic"})) return;
    if (j.contains("file") && j.contains("synthetic")) r.fail("traces", "give either 'file' or 'synthetic', not both");
    if (auto f = r.string(j, "file", "traces")) {
        std::filesystem::path p(*f);
        src.file = p.is_absolute() ? p : base_dir / p;
    }
    if (j.contains("synthetic")) {
        const auto& s = j["synthetic"];
        if (!r.object(s, "traces.synthetic", {"seed", "slots", "profile"})) return;
        r.count(s, "seed", "traces.synthetic", src.seed);
        r.count(s, "slots", "traces.synthetic", src.slots);
        if (s.contains("profile")) read_profile(r, s["profile"], "traces.synthetic.profile", src.profile);
    }
}

void read_inner(Reader& r, const json& j, InnerLoopConfig& in) {
    if (!r.object(j, "inner", {"sigma", "max_iters", "tol", "mode", "smoothing"})) return;
    r.number(j, "sigma", "inner", in.sigma);
    r.count(j, "max_iters", "inner", in.max_iters);
    r.number(j, "tol", "inner", in.tol);
    r.number(j, "smoothing", "inner", in.subproblem.smoothing);
    if (auto m = r.string(j, "mode", "inner")) {
        if (*m == "plain")
            in.mode = InnerMode::Plain;
        else if (*m == "fast")
            in.mode = InnerMode::Fast;
        else
            r.fail("inner.mode", "expected plain or fast");
    }
}

void read_outer(Reader& r, const json& j, OuterLoopConfig& out) {
    if (!r.object(j, "outer", {"rho", "lambda_init", "warm_start", "horizon"})) return;
    r.number(j, "rho", "outer", out.rho);
    r.number(j, "lambda_init", "outer", out.lambda_init);
    r.boolean(j, "warm_start", "outer", out.warm_start);
    r.count(j, "horizon", "outer", out.horizon);
}

} // namespace

std::vector<MegpState> RunConfig::initial() const { return initial_storage ? *initial_storage : mid_storage(park); }

RunConfig default_config() {
    RunConfig cfg;
    cfg.park = benchmark_park();
    cfg.inner.subproblem.smoothing = 5.0;
    cfg.outer.rho = 5.0;
    cfg.outer.warm_start = false;
    return cfg;
}

ConfigLoad parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    ConfigLoad out{default_config(), {}};
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        out.errors.push_back(std::string("config: malformed JSON: ") + e.what());
        return out;
    }
    Reader r(out.errors);
    if (!r.object(j, "config", {"park", "initial_storage", "traces", "inner", "outer", "case", "output_dir"}))
        return out;
    auto& cfg = out.config;
    if (j.contains("park")) read_park(r, j["park"], cfg.park);
    if (j.contains("initial_storage")) {
        const auto& s = j["initial_storage"];
        if (s.is_string() && s.get<std::string>() == "mid") {
            cfg.initial_storage.reset();
        } else if (s.is_array()) {
            std::vector<MegpState> states;
            for (std::size_t n = 0; n < s.size(); ++n) {
                const std::string where = "initial_storage[" + std::to_string(n + 1) + "]";
                MegpState st;
                if (r.object(s[n], where, {"battery", "tank"})) {
                    r.number(s[n], "battery", where, st.battery);
                    r.number(s[n], "tank", where, st.tank);
                }
                states.push_back(st);
            }
            cfg.initial_storage = std::move(states);
        } else {
            r.fail("initial_storage", "expected \"mid\" or an array of {battery, tank}");
        }
    }
    if (j.contains("traces")) read_traces(r, j["traces"], base_dir, cfg.traces);
    if (j.contains("inner")) read_inner(r, j["inner"], cfg.inner);
    if (j.contains("outer")) read_outer(r, j["outer"], cfg.outer);
    if (auto c = r.string(j, "case", "config")) {
        try {
            cfg.policy = parse_policy_case(*c);
        } catch (const ValidationError& e) {
            r.fail("case", e.what());
        }
    }
    if (auto o = r.string(j, "output_dir", "config")) cfg.output_dir = *o;
    return out;
}

ConfigLoad load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        ConfigLoad out{default_config(), {}};
        out.errors.push_back("config: cannot open " + path.string());
        return out;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

std::vector<std::string> check_config(const RunConfig& cfg) {
    auto errors = validate(cfg.park);
    auto add = [&](std::vector<std::string> v) { errors.insert(errors.end(), v.begin(), v.end()); };
    auto guard = [&](auto&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            errors.push_back(e.what());
        }
    };
    guard([&] { validate(cfg.inner); });
    guard([&] { validate(cfg.outer); });
    if (cfg.initial_storage) {
        if (cfg.initial_storage->size() != cfg.park.megps.size())
            errors.push_back("initial_storage: count differs from MEGP count");
        else
            for (std::size_t k = 0; k < cfg.park.megps.size(); ++k)
                add(validate((*cfg.initial_storage)[k], cfg.park.megps[k], "initial_storage[" + std::to_string(k + 1) + "]"));
    }
    if (cfg.traces.file) {
        if (!std::filesystem::exists(*cfg.traces.file))
            errors.push_back("traces.file: no such file: " + cfg.traces.file->string());
    } else {
        if (cfg.traces.slots == 0) errors.push_back("traces.synthetic.slots: must be >= 1");
        if (cfg.traces.profile.megps != cfg.park.megps.size())
            errors.push_back("traces.synthetic.profile.megps: differs from MEGP count");
        if (cfg.traces.profile.users != cfg.park.users.size())
            errors.push_back("traces.synthetic.profile.users: differs from user count");
    }
    return errors;
}

TraceSet materialize_traces(const RunConfig& cfg) {
    TraceSet traces;
    if (cfg.traces.file) {
        TraceSchema schema{cfg.park.megps.size(), cfg.park.users.size(), cfg.park.elastic_loads.size()};
        traces = load_traces(*cfg.traces.file, schema);
    } else {
        traces = synth_traces(cfg.traces.seed, cfg.traces.slots, cfg.traces.profile);
    }
    require_valid(validate(traces, cfg.park));
    return traces;
}

} // namespace megsched
