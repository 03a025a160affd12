#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "megsched/coordinator/horizon.hpp"

namespace megsched {

/// Proposed: the full scheme.
/// Case1: no curtailment incentive and no elastic loads; all load is inelastic.
/// Case2: no renewable output and plain (unaccelerated) multiplier ascent.
enum class PolicyCase { Proposed, Case1, Case2 };

std::string to_string(PolicyCase c);
PolicyCase parse_policy_case(std::string_view s);

struct CaseSetup {
    ParkParams park;
    TraceSet traces;
    InnerLoopConfig inner;
};

/// Park, traces and inner config with the case's modifications applied.
CaseSetup apply_case(PolicyCase c, const ParkParams& park, const TraceSet& traces, const InnerLoopConfig& inner);

struct CaseRun {
    PolicyCase policy = PolicyCase::Proposed;
    CaseSetup setup;
    ScheduleResult schedule;
};

CaseRun run_case(PolicyCase c, const ParkParams& park, const TraceSet& traces, const std::vector<MegpState>& initial,
                 const InnerLoopConfig& inner, const OuterLoopConfig& outer);

} // namespace megsched
