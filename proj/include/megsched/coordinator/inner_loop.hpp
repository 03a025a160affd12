#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "megsched/coordinator/fista.hpp"
#include "megsched/core/decision.hpp"
#include "megsched/core/params.hpp"
#include "megsched/solver/allocation.hpp"

namespace megsched {

enum class InnerMode { Plain, Fast };

struct InnerLoopConfig {
    double sigma = 0.2;
    std::size_t max_iters = 100;
    double tol = 0.01;  ///< stop once the max-norm change of tau drops below this
    InnerMode mode = InnerMode::Fast;
    SubproblemOptions subproblem;
};

void validate(const InnerLoopConfig& cfg);

/// Allocated demand minus declared supply, per plant and carrier.
TauVector tau_gradient(const ParkParams& park, const SlotDecision& d);

struct InnerLoopResult {
    SlotDecision decision;  ///< subproblem solution at the final tau
    TauVector tau;
    std::size_t iterations = 0;
    double last_step = std::numeric_limits<double>::infinity();  ///< max-norm of the final tau change
};

/// Fast-timescale multiplier ascent for one slot, starting from `tau0`.
/// Iteration count equals max_iters when the stopping rule never fired.
InnerLoopResult run_inner_loop(const ParkParams& park, const SlotExogenous& exo, const std::vector<double>& lambda_e,
                               const std::vector<double>& lambda_h, const TauVector& tau0,
                               const InnerLoopConfig& cfg);

} // namespace megsched
