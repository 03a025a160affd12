#include "megsched/harness/telemetry.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "megsched/core/error.hpp"
#include "megsched/core/format.hpp"

namespace megsched {
namespace {

class Row {
public:
    explicit Row(std::ostream& out) : out_(out) {}
    ~Row() { out_ << '\n'; }

    Row& operator<<(double v) { return put(format_number(v)); }
    Row& operator<<(std::size_t v) { return put(std::to_string(v)); }
    Row& operator<<(const std::string& v) { return put(v); }

private:
    Row& put(const std::string& s) {
        if (!first_) out_ << ',';
        first_ = false;
        out_ << s;
        return *this;
    }
    std::ostream& out_;
    bool first_ = true;
};

std::string indexed(const std::string& name, std::size_t i) { return name + "_" + std::to_string(i + 1); }

std::size_t megp_count(const ScheduleResult& r) { return r.slots.empty() ? 0 : r.slots.front().storage.size(); }

} // namespace

void write_telemetry_csv(std::ostream& out, const ScheduleResult& r) {
    const std::size_t K = megp_count(r);
    {
        Row h(out);
        for (const char* c : {"t", "hour", "cost", "relaxed_cost", "iterations", "last_step", "clipped", "settled",
                              "unserved", "spilled", "throughput", "infeasible"})
            h << std::string(c);
        for (std::size_t k = 0; k < K; ++k)
            for (const char* c : {"lambda_e", "lambda_h", "battery", "tank", "tau_e", "tau_h", "tau_g"})
                h << indexed(c, k);
    }
    for (const auto& s : r.slots) {
        Row row(out);
        row << s.t + 1 << s.t % 24 << s.cost << s.relaxed_cost << s.iterations << s.last_step << s.clipped
            << s.settled << s.unserved << s.spilled << s.throughput << std::size_t(s.infeasible ? 1 : 0);
        for (std::size_t k = 0; k < K; ++k)
            row << s.lambda_e[k] << s.lambda_h[k] << s.storage[k].battery << s.storage[k].tank
                << s.tau[k][Carrier::Electricity] << s.tau[k][Carrier::Heat] << s.tau[k][Carrier::Gas];
    }
}

void write_telemetry_json(std::ostream& out, const ScheduleResult& r) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : r.slots) {
        nlohmann::json tau = nlohmann::json::array();
        for (const auto& v : s.tau) tau.push_back(v.values);
        nlohmann::json storage = nlohmann::json::array();
        for (const auto& st : s.storage) storage.push_back({{"battery", st.battery}, {"tank", st.tank}});
        slots.push_back({{"t", s.t + 1},
                         {"cost", s.cost},
                         {"relaxed_cost", s.relaxed_cost},
                         {"iterations", s.iterations},
                         {"last_step", s.last_step},
                         {"lambda_e", s.lambda_e},
                         {"lambda_h", s.lambda_h},
                         {"tau", tau},
                         {"storage", storage},
                         {"clipped", s.clipped},
                         {"settled", s.settled},
                         {"unserved", s.unserved},
                         {"spilled", s.spilled},
                         {"throughput", s.throughput},
                         {"infeasible", s.infeasible}});
    }
    nlohmann::json doc{{"total_cost", r.total_cost()},
                       {"median_iterations", median_iterations(r)},
                       {"slots", slots}};
    out << doc.dump(1) << '\n';
}

void write_costs_csv(std::ostream& out, const ScheduleResult& r) {
    Row(out) << std::string("t") << std::string("hour") << std::string("cost");
    for (const auto& s : r.slots) Row(out) << s.t + 1 << s.t % 24 << s.cost;
}

void write_cdf_csv(std::ostream& out, const std::vector<CdfPoint>& cdf) {
    Row(out) << std::string("iterations") << std::string("fraction");
    for (const auto& p : cdf) Row(out) << p.iterations << p.fraction;
}

void write_dispatch_csv(std::ostream& out, const ScheduleResult& r, const TraceSet& traces) {
    const std::size_t K = megp_count(r);
    const std::size_t I = r.slots.empty() ? 0 : r.slots.front().executed.users.size();
    const std::size_t Q = r.slots.empty() ? 0 : r.slots.front().executed.elastic.size();
    {
        Row h(out);
        h << std::string("t") << std::string("hour") << std::string("price_e");
        for (std::size_t k = 0; k < K; ++k)
            for (const char* c : {"charge_e", "discharge_e", "charge_h", "discharge_h", "chp_gas", "boiler_gas",
                                  "import_e", "export_e", "gas_to_loads", "renewable_used"})
                h << indexed(c, k);
        for (std::size_t i = 0; i < I; ++i) h << indexed("curtailed", i);
        for (std::size_t q = 0; q < Q; ++q) h << indexed("elastic", q);
    }
    for (const auto& s : r.slots) {
        Row row(out);
        row << s.t + 1 << s.t % 24 << traces.slots[s.t].price_e;
        for (const auto& m : s.executed.megps)
            row << m.charge_e << m.discharge_e << m.charge_h << m.discharge_h << m.chp_gas << m.boiler_gas
                << m.import_e << m.export_e << m.gas_to_loads << m.renewable_used;
        for (const auto& u : s.executed.users) row << u.curtailed;
        for (double x : s.executed.elastic) row << x;
    }
}

std::size_t NumericTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("missing column '" + name + "'", 1, 0);
    return static_cast<std::size_t>(it - header.begin());
}

NumericTable read_numeric_csv(std::istream& in) {
    NumericTable t;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty table", 1, 0);
    {
        std::istringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) t.header.push_back(f);
    }
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<double> values;
        std::istringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) {
            const auto v = parse_number(f);
            if (!v) throw ParseError("not a number: '" + f + "'", row, values.size() + 1);
            values.push_back(*v);
        }
        if (values.size() != t.header.size())
            throw ParseError("row has " + std::to_string(values.size()) + " fields, header has " +
                                 std::to_string(t.header.size()),
                             row, values.size() + 1);
        t.rows.push_back(std::move(values));
    }
    return t;
}

} // namespace megsched
