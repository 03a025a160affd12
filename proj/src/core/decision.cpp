#include "megsched/core/decision.hpp"

namespace megsched {

SlotDecision SlotDecision::zero(const ParkParams& park) {
    SlotDecision d;
    d.megps.resize(park.megps.size());
    d.users.resize(park.users.size());
    for (std::size_t i = 0; i < park.users.size(); ++i) d.users[i].supplied.assign(park.users[i].suppliers.size(), 0.0);
    d.elastic.assign(park.elastic_loads.size(), 0.0);
    return d;
}

CarrierVector implied_supply(const MegpParams& p, const MegpDispatch& d) noexcept {
    CarrierVector s;
    s[Carrier::Electricity] = p.eta_chp_e * d.chp_gas + d.discharge_e - d.charge_e + d.renewable_used +
                              d.import_e - d.export_e;
    s[Carrier::Heat] = p.eta_chp_h * d.chp_gas + p.eta_boiler * d.boiler_gas + d.discharge_h - d.charge_h;
    s[Carrier::Gas] = d.gas_to_loads;
    return s;
}

std::vector<CarrierVector> allocated_demand(const ParkParams& park, const SlotDecision& d) {
    std::vector<CarrierVector> demand(park.megps.size());
    for (std::size_t i = 0; i < park.users.size(); ++i) {
        const auto& sup = park.users[i].suppliers;
        for (std::size_t j = 0; j < sup.size(); ++j) demand[sup[j]][Carrier::Electricity] += d.users[i].supplied[j];
    }
    for (std::size_t q = 0; q < park.elastic_loads.size(); ++q) {
        const auto& el = park.elastic_loads[q];
        demand[el.megp][el.carrier] += d.elastic[q];
    }
    return demand;
}

} // namespace megsched
