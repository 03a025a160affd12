#pragma once

#include <cstddef>

#include "megsched/core/params.hpp"
#include "megsched/solver/multipliers.hpp"

namespace megsched {

/// Linear coefficient of every plant decision in the subproblem objective once
/// the declared supply is substituted by its device expression.
/// charge/discharge coefficients are exact negations of each other.
struct MarginalCosts {
    double chp = 0.0;           ///< per unit of CHP gas
    double boiler = 0.0;        ///< per unit of boiler gas
    double charge_e = 0.0;
    double discharge_e = 0.0;
    double charge_h = 0.0;
    double discharge_h = 0.0;
    double import_e = 0.0;
    double export_e = 0.0;
    double gas_to_loads = 0.0;
    double renewable = 0.0;     ///< per unit of renewable output used
};

MarginalCosts marginal_costs(const MegpParams& params, const SlotExogenous& exo, const Multipliers& mult,
                             std::size_t k) noexcept;

} // namespace megsched
