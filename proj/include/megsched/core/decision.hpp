#pragma once

#include <cstddef>
#include <vector>

#include "megsched/core/carrier.hpp"
#include "megsched/core/params.hpp"

namespace megsched {

/// Decisions of one MEGP in one slot. Gas purchased by the plant is split into
/// CHP fuel, boiler fuel and gas delivered to loads.
struct MegpDispatch {
    double charge_e = 0.0;
    double discharge_e = 0.0;
    double charge_h = 0.0;
    double discharge_h = 0.0;
    double chp_gas = 0.0;
    double boiler_gas = 0.0;
    double import_e = 0.0;
    double export_e = 0.0;
    double gas_to_loads = 0.0;
    double renewable_used = 0.0;
    CarrierVector supply;  ///< declared availability x_k

    double gas_import() const noexcept { return chp_gas + boiler_gas + gas_to_loads; }
};

struct UserDispatch {
    double curtailed = 0.0;
    std::vector<double> supplied;  ///< parallel to UserParams::suppliers
};

/// Full decision vector of one slot.
struct SlotDecision {
    std::vector<MegpDispatch> megps;
    std::vector<UserDispatch> users;
    std::vector<double> elastic;  ///< served elastic load, parallel to ParkParams::elastic_loads

    static SlotDecision zero(const ParkParams& park);
};

/// Supply of each carrier implied by a plant's device, trade and renewable decisions.
CarrierVector implied_supply(const MegpParams& params, const MegpDispatch& d) noexcept;

/// Demand allocated to each plant: user load it serves plus elastic loads it owns.
std::vector<CarrierVector> allocated_demand(const ParkParams& park, const SlotDecision& d);

} // namespace megsched
