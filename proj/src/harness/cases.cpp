#include "megsched/harness/cases.hpp"

#include "megsched/core/error.hpp"

namespace megsched {

std::string to_string(PolicyCase c) {
    switch (c) {
    case PolicyCase::Proposed: return "proposed";
    case PolicyCase::Case1: return "case1";
    case PolicyCase::Case2: return "case2";
    }
    return "unknown";
}

PolicyCase parse_policy_case(std::string_view s) {
    if (s == "proposed") return PolicyCase::Proposed;
    if (s == "case1") return PolicyCase::Case1;
    if (s == "case2") return PolicyCase::Case2;
    throw ValidationError("unknown case '" + std::string(s) + "' (expected proposed, case1 or case2)");
}

CaseSetup apply_case(PolicyCase c, const ParkParams& park, const TraceSet& traces, const InnerLoopConfig& inner) {
    CaseSetup s{park, traces, inner};
    switch (c) {
    case PolicyCase::Proposed:
        break;
    case PolicyCase::Case1:
        for (auto& u : s.park.users) u.curtail_ratio = 0.0;
        s.park.elastic_loads.clear();
        for (auto& slot : s.traces.slots) slot.elastic_alpha.clear();
        break;
    case PolicyCase::Case2:
        for (auto& slot : s.traces.slots)
            for (auto& r : slot.renewable) r = 0.0;
        s.inner.mode = InnerMode::Plain;
        break;
    }
    return s;
}

CaseRun run_case(PolicyCase c, const ParkParams& park, const TraceSet& traces, const std::vector<MegpState>& initial,
                 const InnerLoopConfig& inner, const OuterLoopConfig& outer) {
    CaseRun run{c, apply_case(c, park, traces, inner), {}};
    run.schedule = run_horizon(run.setup.park, run.setup.traces, initial, run.setup.inner, outer);
    return run;
}

} // namespace megsched
