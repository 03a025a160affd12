#pragma once

#include <vector>

#include "megsched/core/decision.hpp"
#include "megsched/core/params.hpp"

namespace megsched {

struct ProjectionResult {
    SlotDecision decision;          ///< executed schedule
    std::vector<MegpState> next;    ///< storage levels after the slot
    double clipped = 0.0;           ///< storage energy removed to respect level bounds
    double settled = 0.0;           ///< energy moved by balance recourse
    double unserved = 0.0;          ///< demand that no recourse could cover
    double spilled = 0.0;           ///< supply that no recourse could absorb
    bool infeasible = false;
};

/// Turns the relaxed schedule of one slot into an executable one.
///
/// 1. Charge and discharge rates are clipped so every battery and tank level
///    stays within its bounds.
/// 2. Each plant's supply is made equal to the demand allocated to it, carrier
///    by carrier (heat, then electricity, then gas), using recourse in a fixed
///    order: storage rates in the direction that cannot break level bounds,
///    boiler and grid trades within the remaining park caps, renewable spill,
///    and finally shedding elastic load and raising curtailment.
///
/// The slot is marked infeasible when demand stays unserved or surplus stays
/// unabsorbed after all recourse.
ProjectionResult project_storage(const ParkParams& park, const SlotExogenous& exo,
                                 const std::vector<MegpState>& states, const SlotDecision& relaxed);

} // namespace megsched
