#pragma once

#include <cstddef>
#include <vector>

#include "megsched/coordinator/inner_loop.hpp"
#include "megsched/core/decision.hpp"
#include "megsched/core/params.hpp"
#include "megsched/harness/traces.hpp"

namespace megsched {

struct OuterLoopConfig {
    double rho = 0.05;           ///< step of the slow charge/discharge multipliers
    double lambda_init = 0.0;
    bool warm_start = true;      ///< start each slot's tau from the previous slot's result
    std::size_t horizon = 0;     ///< slots to run; 0 means the whole trace
};

void validate(const OuterLoopConfig& cfg);

/// lambda' = lambda + rho (C - D) per plant, for battery and tank. No projection.
void lambda_update(std::vector<double>& lambda_e, std::vector<double>& lambda_h, double rho, const SlotDecision& d);

struct SlotRecord {
    std::size_t t = 0;              ///< 0-based slot index
    double cost = 0.0;              ///< executed schedule, thousands of CNY
    double relaxed_cost = 0.0;      ///< inner-loop schedule before projection
    std::size_t iterations = 0;
    double last_step = 0.0;
    std::vector<double> lambda_e;   ///< used in this slot
    std::vector<double> lambda_h;
    TauVector tau;                  ///< converged fast multipliers
    std::vector<MegpState> storage; ///< levels at the end of the slot
    SlotDecision relaxed;
    SlotDecision executed;
    double clipped = 0.0;
    double settled = 0.0;
    double unserved = 0.0;
    double spilled = 0.0;
    double throughput = 0.0;        ///< relaxed charge + discharge, battery and tank
    bool infeasible = false;
};

struct ScheduleResult {
    std::vector<SlotRecord> slots;

    double total_cost() const noexcept;
    double total_clipped() const noexcept;
    double total_throughput() const noexcept;
    std::size_t infeasible_slots() const noexcept;
};

/// Storage levels at the midpoint of every battery and tank.
std::vector<MegpState> mid_storage(const ParkParams& park);

/// Runs the two-timescale scheme over the trace: per slot, the fast multiplier
/// loop, the slow multiplier update, then execution through project_storage.
ScheduleResult run_horizon(const ParkParams& park, const TraceSet& traces, const std::vector<MegpState>& initial,
                           const InnerLoopConfig& inner, const OuterLoopConfig& outer);

} // namespace megsched
