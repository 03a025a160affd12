#pragma once

#include <vector>

#include "megsched/core/decision.hpp"
#include "megsched/core/params.hpp"

namespace megsched {

/// Park cost of one slot in thousands of CNY: energy purchases minus sales,
/// plus incentive payments, minus satisfaction revenue of inelastic and elastic loads.
double slot_cost(const ParkParams& park, const SlotExogenous& exo, const SlotDecision& d);

/// Per-plant declared supply minus the supply implied by its devices. Zero means
/// the declared availability is consistent with the plant's physics and trades.
std::vector<CarrierVector> balance_residual(const ParkParams& park, const SlotExogenous& exo,
                                            const SlotDecision& d);

/// Park totals of electricity and gas purchases and electricity sales.
struct ParkTrades {
    double import_e = 0.0;
    double export_e = 0.0;
    double import_g = 0.0;
};
ParkTrades park_trades(const SlotDecision& d) noexcept;

} // namespace megsched
