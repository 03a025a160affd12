#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "megsched/core/decision.hpp"
#include "megsched/core/params.hpp"
#include "megsched/solver/multipliers.hpp"

namespace megsched {

struct SubproblemOptions {
    /// Weight of the proximal term smoothing/2 * v^2 added to every plant
    /// decision. Zero gives the exact linear subproblem; positive values make
    /// plant responses continuous in the multipliers.
    double smoothing = 0.0;
};

/// Per-plant trade caps used inside solve_megp. The park caps apply to sums
/// over plants; solve_subproblem tightens these when the sums exceed them.
struct TradeCaps {
    double import_e = 0.0;
    double export_e = 0.0;
    double gas = 0.0;
};

MegpDispatch solve_megp(const MegpParams& params, const SlotExogenous& exo, const Multipliers& mult,
                        std::size_t k, const TradeCaps& caps, const SubproblemOptions& opts = {});

struct UserResponse {
    double curtailed = 0.0;
    std::vector<double> supplied;  ///< parallel to UserParams::suppliers
};

/// Serves the uncurtailed load entirely from the supplier with the lowest
/// electricity multiplier (lowest MEGP index on ties) and picks the
/// curtailment minimising tau*(X - r) + 2a r^2 - w (X - r) over [0, ratio*X].
UserResponse solve_user(const UserParams& user, double load, std::span<const CarrierVector> tau);

/// Elastic load maximising alpha*x - beta*x^2 - tau*x over [0, max].
double solve_elastic(const ElasticLoadParams& load, double alpha, double tau);

SlotDecision solve_subproblem(const ParkParams& park, const SlotExogenous& exo, const Multipliers& mult,
                              const SubproblemOptions& opts = {});

/// Objective of the per-micro-slot Lagrangian evaluated directly at `d`,
/// including the smoothing term. Used to compare solver and oracle.
double subproblem_objective(const ParkParams& park, const SlotExogenous& exo, const Multipliers& mult,
                            const SlotDecision& d, const SubproblemOptions& opts = {});

} // namespace megsched
