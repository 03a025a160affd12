#include "megsched/coordinator/horizon.hpp"

#include <cmath>
#include <string>

#include "megsched/core/cost.hpp"
#include "megsched/core/error.hpp"
#include "megsched/harness/projection.hpp"

namespace megsched {

void validate(const OuterLoopConfig& cfg) {
    if (!(cfg.rho >= 0.0) || !std::isfinite(cfg.rho)) throw ValidationError("outer rho must be finite and >= 0");
    if (!std::isfinite(cfg.lambda_init)) throw ValidationError("outer lambda_init must be finite");
}

void lambda_update(std::vector<double>& lambda_e, std::vector<double>& lambda_h, double rho, const SlotDecision& d) {
    for (std::size_t k = 0; k < d.megps.size(); ++k) {
        const auto& m = d.megps[k];
        lambda_e[k] += rho * (m.charge_e - m.discharge_e);
        lambda_h[k] += rho * (m.charge_h - m.discharge_h);
    }
}

double ScheduleResult::total_cost() const noexcept {
    double s = 0.0;
    for (const auto& r : slots) s += r.cost;
    return s;
}

double ScheduleResult::total_clipped() const noexcept {
    double s = 0.0;
    for (const auto& r : slots) s += r.clipped;
    return s;
}

double ScheduleResult::total_throughput() const noexcept {
    double s = 0.0;
    for (const auto& r : slots) s += r.throughput;
    return s;
}

std::size_t ScheduleResult::infeasible_slots() const noexcept {
    std::size_t n = 0;
    for (const auto& r : slots) n += r.infeasible ? 1 : 0;
    return n;
}

std::vector<MegpState> mid_storage(const ParkParams& park) {
    std::vector<MegpState> s;
    for (const auto& p : park.megps)
        s.push_back({0.5 * (p.battery_min + p.battery_max), 0.5 * (p.tank_min + p.tank_max)});
    return s;
}

ScheduleResult run_horizon(const ParkParams& park, const TraceSet& traces, const std::vector<MegpState>& initial,
                           const InnerLoopConfig& inner, const OuterLoopConfig& outer) {
    require_valid(validate(park));
    validate(inner);
    validate(outer);
    const std::size_t T = outer.horizon == 0 ? traces.size() : outer.horizon;
    if (T == 0 || T > traces.size())
        throw ValidationError("horizon of " + std::to_string(T) + " slots does not fit a trace of " +
                              std::to_string(traces.size()));
    if (initial.size() != park.megps.size()) throw ValidationError("initial storage count differs from MEGP count");
    for (std::size_t k = 0; k < initial.size(); ++k)
        require_valid(validate(initial[k], park.megps[k], "initial storage " + std::to_string(k + 1)));

    const std::size_t K = park.megps.size();
    std::vector<double> lambda_e(K, outer.lambda_init), lambda_h(K, outer.lambda_init);
    std::vector<MegpState> state = initial;
    TauVector tau(K);

    ScheduleResult out;
    out.slots.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
        const auto& exo = traces.slots[t];
        require_valid(validate(exo, park, "slot " + std::to_string(t + 1)));
        if (!outer.warm_start) tau.assign(K, CarrierVector{});

        SlotRecord rec;
        rec.t = t;
        rec.lambda_e = lambda_e;
        rec.lambda_h = lambda_h;

        auto inner_out = run_inner_loop(park, exo, lambda_e, lambda_h, tau, inner);
        tau = inner_out.tau;
        lambda_update(lambda_e, lambda_h, outer.rho, inner_out.decision);

        auto proj = project_storage(park, exo, state, inner_out.decision);
        state = proj.next;

        rec.iterations = inner_out.iterations;
        rec.last_step = inner_out.last_step;
        rec.tau = inner_out.tau;
        rec.storage = state;
        rec.relaxed_cost = slot_cost(park, exo, inner_out.decision);
        rec.cost = slot_cost(park, exo, proj.decision);
        for (const auto& m : inner_out.decision.megps)
            rec.throughput += m.charge_e + m.discharge_e + m.charge_h + m.discharge_h;
        rec.relaxed = std::move(inner_out.decision);
        rec.executed = std::move(proj.decision);
        rec.clipped = proj.clipped;
        rec.settled = proj.settled;
        rec.unserved = proj.unserved;
        rec.spilled = proj.spilled;
        rec.infeasible = proj.infeasible;
        out.slots.push_back(std::move(rec));
    }
    return out;
}

} // namespace megsched
