#include "megsched/core/params.hpp"

#include <cmath>
#include <sstream>

#include "megsched/core/error.hpp"

namespace megsched {
namespace {

class Checker {
public:
    explicit Checker(std::string where) : where_(std::move(where)) {}

    void efficiency(const char* name, double v) {
        if (!(std::isfinite(v) && v > 0.0 && v <= 1.0)) fail(name, v, "must lie in (0, 1]");
    }
    void nonnegative(const char* name, double v) {
        if (!(std::isfinite(v) && v >= 0.0)) fail(name, v, "must be finite and >= 0");
    }
    void positive(const char* name, double v) {
        if (!(std::isfinite(v) && v > 0.0)) fail(name, v, "must be finite and > 0");
    }
    void require(bool ok, const std::string& message) {
        if (!ok) out_.push_back(where_ + ": " + message);
    }

    std::vector<std::string> take() { return std::move(out_); }

private:
    void fail(const char* name, double v, const char* rule) {
        std::ostringstream os;
        os << where_ << ": " << name << " = " << v << " " << rule;
        out_.push_back(os.str());
    }

    std::string where_;
    std::vector<std::string> out_;
};

void append(std::vector<std::string>& dst, std::vector<std::string> src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

} // namespace

std::vector<std::string> validate(const MegpParams& p, const std::string& where) {
    Checker c(where);
    c.efficiency("eta_charge_e", p.eta_charge_e);
    c.efficiency("eta_discharge_e", p.eta_discharge_e);
    c.efficiency("eta_charge_h", p.eta_charge_h);
    c.efficiency("eta_discharge_h", p.eta_discharge_h);
    c.efficiency("eta_chp_e", p.eta_chp_e);
    c.efficiency("eta_chp_h", p.eta_chp_h);
    c.efficiency("eta_boiler", p.eta_boiler);
    c.nonnegative("battery_min", p.battery_min);
    c.nonnegative("tank_min", p.tank_min);
    c.require(p.battery_min < p.battery_max, "battery_min must be < battery_max");
    c.require(p.tank_min < p.tank_max, "tank_min must be < tank_max");
    c.nonnegative("charge_e_max", p.charge_e_max);
    c.nonnegative("discharge_e_max", p.discharge_e_max);
    c.nonnegative("charge_h_max", p.charge_h_max);
    c.nonnegative("discharge_h_max", p.discharge_h_max);
    c.nonnegative("chp_e_max", p.chp_e_max);
    c.nonnegative("chp_h_max", p.chp_h_max);
    c.nonnegative("boiler_h_max", p.boiler_h_max);
    c.nonnegative("supply_max.electricity", p.supply_max[Carrier::Electricity]);
    c.nonnegative("supply_max.heat", p.supply_max[Carrier::Heat]);
    c.nonnegative("supply_max.gas", p.supply_max[Carrier::Gas]);
    return c.take();
}

std::vector<std::string> validate(const MegpState& s, const MegpParams& p, const std::string& where) {
    Checker c(where);
    c.require(std::isfinite(s.battery) && s.battery >= p.battery_min && s.battery <= p.battery_max,
              "battery level outside [battery_min, battery_max]");
    c.require(std::isfinite(s.tank) && s.tank >= p.tank_min && s.tank <= p.tank_max,
              "tank level outside [tank_min, tank_max]");
    return c.take();
}

std::vector<std::string> validate(const UserParams& u, std::size_t megp_count, const std::string& where) {
    Checker c(where);
    c.positive("unsatisfaction", u.unsatisfaction);
    c.require(std::isfinite(u.curtail_ratio) && u.curtail_ratio >= 0.0 && u.curtail_ratio <= 1.0,
              "curtail_ratio must lie in [0, 1]");
    c.nonnegative("served_value", u.served_value);
    c.require(!u.suppliers.empty(), "supplier set must be nonempty");
    for (auto k : u.suppliers)
        c.require(k < megp_count, "suppliers: MEGP " + std::to_string(k + 1) + " does not exist (park has " +
                                      std::to_string(megp_count) + ")");
    return c.take();
}

std::vector<std::string> validate(const ElasticLoadParams& q, std::size_t megp_count, const std::string& where) {
    Checker c(where);
    c.nonnegative("alpha", q.alpha);
    c.positive("beta", q.beta);
    c.nonnegative("max", q.max);
    c.require(q.megp < megp_count, "megp: MEGP " + std::to_string(q.megp + 1) + " does not exist (park has " + std::to_string(megp_count) + ")");
    return c.take();
}

std::vector<std::string> validate(const ParkParams& park) {
    std::vector<std::string> out;
    Checker c("park");
    c.nonnegative("import_max", park.import_max);
    c.nonnegative("gas_max", park.gas_max);
    c.nonnegative("export_max", park.export_max);
    c.require(!park.megps.empty(), "at least one MEGP is required");
    c.require(!park.users.empty(), "at least one user is required");
    append(out, c.take());
    const auto K = park.megps.size();
    for (std::size_t k = 0; k < K; ++k) append(out, validate(park.megps[k], "megp[" + std::to_string(k) + "]"));
    for (std::size_t i = 0; i < park.users.size(); ++i)
        append(out, validate(park.users[i], K, "user[" + std::to_string(i) + "]"));
    for (std::size_t q = 0; q < park.elastic_loads.size(); ++q)
        append(out, validate(park.elastic_loads[q], K, "elastic[" + std::to_string(q) + "]"));
    return out;
}

std::vector<std::string> validate(const SlotExogenous& exo, const ParkParams& park, const std::string& where) {
    Checker c(where);
    c.nonnegative("price_e", exo.price_e);
    c.nonnegative("price_o", exo.price_o);
    c.nonnegative("price_g", exo.price_g);
    c.require(exo.price_o <= exo.price_e, "sale price exceeds purchase price (p_o > p_e)");
    c.require(exo.renewable.size() == park.megps.size(), "renewable series count differs from MEGP count");
    c.require(exo.load.size() == park.users.size(), "load series count differs from user count");
    c.require(exo.elastic_alpha.empty() || exo.elastic_alpha.size() == park.elastic_loads.size(),
              "elastic utility series count differs from elastic load count");
    for (double r : exo.renewable) c.nonnegative("renewable", r);
    for (double x : exo.load) c.nonnegative("load", x);
    for (double a : exo.elastic_alpha) c.nonnegative("elastic_alpha", a);
    return c.take();
}

void require_valid(const std::vector<std::string>& violations) {
    if (violations.empty()) return;
    std::string msg = violations.front();
    if (violations.size() > 1) msg += " (+" + std::to_string(violations.size() - 1) + " more)";
    throw ValidationError(msg);
}

} // namespace megsched
