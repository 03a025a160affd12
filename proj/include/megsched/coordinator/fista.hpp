#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "megsched/core/carrier.hpp"

namespace megsched {

using TauVector = std::vector<CarrierVector>;

/// theta(n) = (1 + sqrt(1 + 4 theta(n-1)^2)) / 2
inline double fista_weight(double theta_prev) noexcept {
    return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta_prev * theta_prev));
}

/// Extrapolated point (1 - eps) tau + eps tau_prev, eps = (1 - theta_prev) / theta.
TauVector fista_combine(const TauVector& tau, const TauVector& tau_prev, double theta_prev, double theta);

/// Momentum state of the accelerated multiplier ascent.
struct FistaState {
    double theta_prev = 1.0;  ///< weight of the previous iteration; starts at 1
    double theta = 1.0;       ///< weight used for the last extrapolation
    TauVector tau_prev;
    TauVector tau;
    std::size_t n = 0;        ///< completed steps

    static FistaState start(const TauVector& tau0) { return {1.0, 1.0, tau0, tau0, 0}; }

    /// Point at which the next subproblem is solved.
    TauVector lookahead() const { return fista_combine(tau, tau_prev, theta, fista_weight(theta)); }
};

/// tau(n+1) = lookahead + sigma * gradient, with the gradient evaluated at the lookahead.
FistaState fast_tau_step(const FistaState& s, double sigma, const TauVector& gradient);

/// tau + sigma * gradient
TauVector plain_tau_step(const TauVector& tau, double sigma, const TauVector& gradient);

} // namespace megsched
