#include "megsched/harness/projection.hpp"

#include <algorithm>
#include <cmath>

#include "megsched/core/devices.hpp"

namespace megsched {
namespace {

constexpr double kEps = 1e-12;
constexpr double kSnap = 1e-9;

class Settler {
public:
    Settler(const ParkParams& park, const SlotExogenous& exo, const std::vector<MegpState>& states,
            ProjectionResult& out)
        : park_(park), exo_(exo), states_(states), out_(out), d_(out.decision) {
        double ie = 0, ee = 0, ig = 0;
        for (const auto& m : d_.megps) {
            ie += m.import_e;
            ee += m.export_e;
            ig += m.gas_import();
        }
        import_room_ = std::max(0.0, park.import_max - ie);
        export_room_ = std::max(0.0, park.export_max - ee);
        gas_room_ = std::max(0.0, park.gas_max - ig);
    }

    void clip_storage(std::size_t k) {
        const auto& p = park_.megps[k];
        auto& m = d_.megps[k];
        const double b = battery_after(k);
        if (b > p.battery_max) clip(m.charge_e, (b - p.battery_max) / p.eta_charge_e);
        if (b < p.battery_min) clip(m.discharge_e, (p.battery_min - b) * p.eta_discharge_e);
        const double w = tank_after(k);
        if (w > p.tank_max) clip(m.charge_h, (w - p.tank_max) / p.eta_charge_h);
        if (w < p.tank_min) clip(m.discharge_h, (p.tank_min - w) * p.eta_discharge_h);
    }

    void settle_heat(std::size_t k) {
        const auto& p = park_.megps[k];
        auto& m = d_.megps[k];
        double gap = demand(k, Carrier::Heat) - supply(k, Carrier::Heat);
        if (gap > kEps) {
            m.charge_h -= use(gap, m.charge_h);
            if (m.charge_h == 0.0)
                m.discharge_h += use(gap, std::min(p.discharge_h_max - m.discharge_h,
                                                   (tank_after(k) - p.tank_min) * p.eta_discharge_h));
            const double boiler_cap = p.boiler_h_max / p.eta_boiler;
            const double heat = use(gap, p.eta_boiler * std::min(boiler_cap - m.boiler_gas, gas_room_));
            m.boiler_gas += heat / p.eta_boiler;
            gas_room_ -= heat / p.eta_boiler;
            shed_elastic(k, Carrier::Heat, gap);
            unserved(gap);
        } else if (gap < -kEps) {
            double surplus = -gap;
            const double boiler_heat = use(surplus, p.eta_boiler * m.boiler_gas);
            m.boiler_gas -= boiler_heat / p.eta_boiler;
            gas_room_ += boiler_heat / p.eta_boiler;
            m.discharge_h -= use(surplus, m.discharge_h);
            if (m.discharge_h == 0.0)
                m.charge_h += use(surplus, std::min(p.charge_h_max - m.charge_h,
                                                    (p.tank_max - tank_after(k)) / p.eta_charge_h));
            const double chp_heat = use(surplus, p.eta_chp_h * m.chp_gas);
            m.chp_gas -= chp_heat / p.eta_chp_h;
            gas_room_ += chp_heat / p.eta_chp_h;
            serve_elastic(k, Carrier::Heat, surplus);
            spilled(surplus);
        }
    }

    void settle_electricity(std::size_t k) {
        const auto& p = park_.megps[k];
        auto& m = d_.megps[k];
        double excess = demand(k, Carrier::Electricity) - p.supply_max[Carrier::Electricity];
        if (excess > kEps) {
            shed_elastic(k, Carrier::Electricity, excess);
            curtail(k, excess);
            if (excess > kEps) out_.infeasible = true;  // served above the declared cap
        }
        double gap = demand(k, Carrier::Electricity) - supply(k, Carrier::Electricity);
        if (gap > kEps) {
            const double less_export = use(gap, m.export_e);
            m.export_e -= less_export;
            export_room_ += less_export;
            const double more_import = use(gap, import_room_);
            m.import_e += more_import;
            import_room_ -= more_import;
            m.charge_e -= use(gap, m.charge_e);
            m.renewable_used += use(gap, exo_.renewable[k] - m.renewable_used);
            if (m.charge_e == 0.0)
                m.discharge_e += use(gap, std::min(p.discharge_e_max - m.discharge_e,
                                                   (battery_after(k) - p.battery_min) * p.eta_discharge_e));
            shed_elastic(k, Carrier::Electricity, gap);
            curtail(k, gap);
            unserved(gap);
        } else if (gap < -kEps) {
            double surplus = -gap;
            const double less_import = use(surplus, m.import_e);
            m.import_e -= less_import;
            import_room_ += less_import;
            const double more_export = use(surplus, export_room_);
            m.export_e += more_export;
            export_room_ -= more_export;
            m.renewable_used -= use(surplus, m.renewable_used);
            m.discharge_e -= use(surplus, m.discharge_e);
            if (m.discharge_e == 0.0)
                m.charge_e += use(surplus, std::min(p.charge_e_max - m.charge_e,
                                                    (p.battery_max - battery_after(k)) / p.eta_charge_e));
            serve_elastic(k, Carrier::Electricity, surplus);
            uncurtail(k, surplus);
            spilled(surplus);
        }
    }

    void settle_gas(std::size_t k) {
        const auto& p = park_.megps[k];
        auto& m = d_.megps[k];
        double gap = demand(k, Carrier::Gas) - m.gas_to_loads;
        if (gap > kEps) {
            const double more = use(gap, std::min(p.supply_max[Carrier::Gas] - m.gas_to_loads, gas_room_));
            m.gas_to_loads += more;
            gas_room_ -= more;
            shed_elastic(k, Carrier::Gas, gap);
            unserved(gap);
        } else if (gap < -kEps) {
            double surplus = -gap;
            const double less = use(surplus, m.gas_to_loads);
            m.gas_to_loads -= less;
            gas_room_ += less;
        }
    }

    void finish(std::size_t k) {
        const auto& p = park_.megps[k];
        auto& m = d_.megps[k];
        m.supply = implied_supply(p, m);
        auto next = storage_step(states_[k], p, {m.charge_e, m.discharge_e, m.charge_h, m.discharge_h});
        next.battery = snap(next.battery, p.battery_min, p.battery_max);
        next.tank = snap(next.tank, p.tank_min, p.tank_max);
        out_.next[k] = next;
    }

private:
    double battery_after(std::size_t k) const {
        const auto& p = park_.megps[k];
        const auto& m = d_.megps[k];
        return states_[k].battery + p.eta_charge_e * m.charge_e - m.discharge_e / p.eta_discharge_e;
    }
    double tank_after(std::size_t k) const {
        const auto& p = park_.megps[k];
        const auto& m = d_.megps[k];
        return states_[k].tank + p.eta_charge_h * m.charge_h - m.discharge_h / p.eta_discharge_h;
    }

    double demand(std::size_t k, Carrier c) const { return allocated_demand(park_, d_)[k][c]; }
    double supply(std::size_t k, Carrier c) const { return implied_supply(park_.megps[k], d_.megps[k])[c]; }

    void clip(double& rate, double amount) {
        const double cut = std::min(rate, amount);
        rate -= cut;
        out_.clipped += cut;
    }

    // Moves min(gap, room) through one recourse and returns it.
    double use(double& gap, double room) {
        const double moved = std::clamp(room, 0.0, std::max(gap, 0.0));
        gap -= moved;
        out_.settled += moved;
        return moved;
    }

    void shed_elastic(std::size_t k, Carrier c, double& gap) {
        for (std::size_t q = 0; q < park_.elastic_loads.size() && gap > kEps; ++q) {
            const auto& el = park_.elastic_loads[q];
            if (el.megp == k && el.carrier == c) d_.elastic[q] -= use(gap, d_.elastic[q]);
        }
    }
    void serve_elastic(std::size_t k, Carrier c, double& surplus) {
        for (std::size_t q = 0; q < park_.elastic_loads.size() && surplus > kEps; ++q) {
            const auto& el = park_.elastic_loads[q];
            if (el.megp == k && el.carrier == c) d_.elastic[q] += use(surplus, el.max - d_.elastic[q]);
        }
    }

    // Raises curtailment of users served by plant k, reducing their draw on it.
    void curtail(std::size_t k, double& gap) {
        for (std::size_t i = 0; i < park_.users.size() && gap > kEps; ++i) {
            const auto& user = park_.users[i];
            auto& u = d_.users[i];
            for (std::size_t j = 0; j < user.suppliers.size(); ++j) {
                if (user.suppliers[j] != k) continue;
                const double moved = use(gap, std::min(user.curtail_ratio * exo_.load[i] - u.curtailed, u.supplied[j]));
                u.curtailed += moved;
                u.supplied[j] -= moved;
            }
        }
    }
    void uncurtail(std::size_t k, double& surplus) {
        for (std::size_t i = 0; i < park_.users.size() && surplus > kEps; ++i) {
            const auto& user = park_.users[i];
            auto& u = d_.users[i];
            for (std::size_t j = 0; j < user.suppliers.size(); ++j) {
                if (user.suppliers[j] != k) continue;
                const double moved = use(surplus, u.curtailed);
                u.curtailed -= moved;
                u.supplied[j] += moved;
            }
        }
    }

    void unserved(double gap) {
        if (gap > kEps) {
            out_.unserved += gap;
            out_.infeasible = true;
        }
    }
    void spilled(double surplus) {
        if (surplus > kEps) {
            out_.spilled += surplus;
            out_.infeasible = true;
        }
    }

    double snap(double level, double lo, double hi) {
        if (level < lo && level > lo - kSnap) return lo;
        if (level > hi && level < hi + kSnap) return hi;
        if (level < lo || level > hi) out_.infeasible = true;
        return level;
    }

    const ParkParams& park_;
    const SlotExogenous& exo_;
    const std::vector<MegpState>& states_;
    ProjectionResult& out_;
    SlotDecision& d_;
    double import_room_ = 0.0;
    double export_room_ = 0.0;
    double gas_room_ = 0.0;
};

} // namespace

ProjectionResult project_storage(const ParkParams& park, const SlotExogenous& exo,
                                 const std::vector<MegpState>& states, const SlotDecision& relaxed) {
    ProjectionResult out;
    out.decision = relaxed;
    out.next.resize(park.megps.size());
    Settler settler(park, exo, states, out);
    for (std::size_t k = 0; k < park.megps.size(); ++k) {
        settler.clip_storage(k);
        settler.settle_heat(k);
        settler.settle_electricity(k);
        settler.settle_gas(k);
        settler.finish(k);
    }
    return out;
}

} // namespace megsched
