#include "megsched/core/cost.hpp"

#include "megsched/core/devices.hpp"

namespace megsched {

ParkTrades park_trades(const SlotDecision& d) noexcept {
    ParkTrades t;
    for (const auto& m : d.megps) {
        t.import_e += m.import_e;
        t.export_e += m.export_e;
        t.import_g += m.gas_import();
    }
    return t;
}

double slot_cost(const ParkParams& park, const SlotExogenous& exo, const SlotDecision& d) {
    const auto trades = park_trades(d);
    double cost = exo.price_e * trades.import_e + exo.price_g * trades.import_g - exo.price_o * trades.export_e;
    for (std::size_t i = 0; i < park.users.size(); ++i) {
        const auto& user = park.users[i];
        const double curtailed = d.users[i].curtailed;
        const double incentive = incentive_price(user, curtailed) * curtailed;
        const double revenue = user.served_value * (exo.load[i] - curtailed);
        cost += incentive - revenue;
    }
    for (std::size_t q = 0; q < park.elastic_loads.size(); ++q) {
        const double x = d.elastic[q];
        cost -= elastic_alpha(park, exo, q) * x - park.elastic_loads[q].beta * x * x;
    }
    return cost;
}

std::vector<CarrierVector> balance_residual(const ParkParams& park, const SlotExogenous&, const SlotDecision& d) {
    std::vector<CarrierVector> out(park.megps.size());
    for (std::size_t k = 0; k < park.megps.size(); ++k)
        out[k] = d.megps[k].supply - implied_supply(park.megps[k], d.megps[k]);
    return out;
}

} // namespace megsched
