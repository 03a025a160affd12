#include "megsched/coordinator/inner_loop.hpp"

#include <cmath>

#include "megsched/core/error.hpp"
#include "megsched/solver/multipliers.hpp"

namespace megsched {

void validate(const InnerLoopConfig& cfg) {
    if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma)) throw ValidationError("inner sigma must be > 0");
    if (!(cfg.tol > 0.0)) throw ValidationError("inner tol must be > 0");
    if (cfg.max_iters == 0) throw ValidationError("inner max_iters must be >= 1");
    if (!(cfg.subproblem.smoothing >= 0.0) || !std::isfinite(cfg.subproblem.smoothing))
        throw ValidationError("smoothing must be finite and >= 0");
}

TauVector tau_gradient(const ParkParams& park, const SlotDecision& d) {
    auto g = allocated_demand(park, d);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] -= d.megps[k].supply;
    return g;
}

InnerLoopResult run_inner_loop(const ParkParams& park, const SlotExogenous& exo, const std::vector<double>& lambda_e,
                               const std::vector<double>& lambda_h, const TauVector& tau0,
                               const InnerLoopConfig& cfg) {
    validate(cfg);
    Multipliers mult{lambda_e, lambda_h, tau0};
    InnerLoopResult out;

    if (cfg.mode == InnerMode::Plain) {
        for (std::size_t n = 1; n <= cfg.max_iters; ++n) {
            const auto d = solve_subproblem(park, exo, mult, cfg.subproblem);
            auto next = plain_tau_step(mult.tau, cfg.sigma, tau_gradient(park, d));
            out.last_step = tau_distance(next, mult.tau);
            mult.tau = std::move(next);
            out.iterations = n;
            if (out.last_step < cfg.tol) break;
        }
    } else {
        auto state = FistaState::start(tau0);
        for (std::size_t n = 1; n <= cfg.max_iters; ++n) {
            mult.tau = state.lookahead();
            const auto d = solve_subproblem(park, exo, mult, cfg.subproblem);
            auto next = fast_tau_step(state, cfg.sigma, tau_gradient(park, d));
            out.last_step = tau_distance(next.tau, state.tau);
            state = std::move(next);
            out.iterations = n;
            if (out.last_step < cfg.tol) break;
        }
        mult.tau = state.tau;
    }

    out.tau = mult.tau;
    out.decision = solve_subproblem(park, exo, mult, cfg.subproblem);
    return out;
}

} // namespace megsched
