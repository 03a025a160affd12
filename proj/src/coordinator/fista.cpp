#include "megsched/coordinator/fista.hpp"

namespace megsched {

TauVector fista_combine(const TauVector& tau, const TauVector& tau_prev, double theta_prev, double theta) {
    const double eps = (1.0 - theta_prev) / theta;
    TauVector out(tau.size());
    for (std::size_t k = 0; k < tau.size(); ++k) out[k] = (1.0 - eps) * tau[k] + eps * tau_prev[k];
    return out;
}

TauVector plain_tau_step(const TauVector& tau, double sigma, const TauVector& gradient) {
    TauVector out(tau.size());
    for (std::size_t k = 0; k < tau.size(); ++k) out[k] = tau[k] + sigma * gradient[k];
    return out;
}

FistaState fast_tau_step(const FistaState& s, double sigma, const TauVector& gradient) {
    const double theta = fista_weight(s.theta);
    FistaState next;
    next.tau = plain_tau_step(fista_combine(s.tau, s.tau_prev, s.theta, theta), sigma, gradient);
    next.tau_prev = s.tau;
    next.theta_prev = s.theta;
    next.theta = theta;
    next.n = s.n + 1;
    return next;
}

} // namespace megsched
